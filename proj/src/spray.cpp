#include "srt/spray.hpp"

#include <algorithm>
#include <cmath>

#include "srt/rng.hpp"

namespace srt {

namespace {

// Base blocks shared by basic and geodesic sprays:
//   d xdot_q / d x_k = sum_p d_k pi^{pq} y_p,   d xdot_q / d y_p = pi^{pq}.
void fill_base_jacobian(const BivectorField& pi, const Vec& x, const Vec& y, Mat& jac) {
    const int n = pi.chart().dim;
    const Mat p = pi.components(x);
    const Tensor3 dp = pi.d_components(x);
    for (int q = 0; q < n; ++q) {
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int pp = 0; pp < n; ++pp) s += dp(k, pp, q) * y[pp];
            jac(q, k) = s;
        }
        for (int pp = 0; pp < n; ++pp) jac(q, n + pp) = p(pp, q);
    }
}

}  // namespace

SprayField basic_spray(const BivectorField& pi) {
    const int n = pi.chart().dim;
    SprayField s;
    s.chart = pi.chart();
    s.pi = pi;
    s.kind = SprayKind::Basic;
    s.eval = [pi, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Vec out = Vec::Zero(2 * n);
        out.head(n) = pi.components(x).transpose() * y;
        return out;
    };
    s.jacobian = [pi, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Mat jac = Mat::Zero(2 * n, 2 * n);
        fill_base_jacobian(pi, x, y, jac);
        return jac;
    };
    return s;
}

SprayField geodesic_spray(const BivectorField& pi, const ContravariantConnection& conn) {
    const int n = pi.chart().dim;
    SprayField s;
    s.chart = pi.chart();
    s.pi = pi;
    s.kind = SprayKind::Geodesic;
    s.eval = [pi, conn, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        const Tensor3 g = conn.coeffs(x);
        Vec out = Vec::Zero(2 * n);
        out.head(n) = pi.components(x).transpose() * y;
        for (int r = 0; r < n; ++r) {
            double v = 0.0;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) v += g(r, p, q) * y[p] * y[q];
            out[n + r] = -v;
        }
        return out;
    };
    s.jacobian = [pi, conn, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Mat jac = Mat::Zero(2 * n, 2 * n);
        fill_base_jacobian(pi, x, y, jac);
        const Tensor3 g = conn.coeffs(x);
        for (int r = 0; r < n; ++r)
            for (int ss = 0; ss < n; ++ss) {
                double v = 0.0;
                for (int q = 0; q < n; ++q) v += (g(r, ss, q) + g(r, q, ss)) * y[q];
                jac(n + r, n + ss) = -v;
            }
        if (conn.dcoeffs) {
            const Tensor4 dg = conn.dcoeffs(x);
            for (int r = 0; r < n; ++r)
                for (int k = 0; k < n; ++k) {
                    double v = 0.0;
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q) v += dg(k, r, p, q) * y[p] * y[q];
                    jac(n + r, k) = -v;
                }
        } else {
            const double h = 1e-5;
            for (int k = 0; k < n; ++k) {
                Vec xp = x, xm = x;
                xp[k] += h;
                xm[k] -= h;
                const Tensor3 gp = conn.coeffs(xp);
                const Tensor3 gm = conn.coeffs(xm);
                for (int r = 0; r < n; ++r) {
                    double v = 0.0;
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q) v += (gp(r, p, q) - gm(r, p, q)) / (2.0 * h) * y[p] * y[q];
                    jac(n + r, k) = -v;
                }
            }
        }
        return jac;
    };
    return s;
}

SprayField custom_spray(const BivectorField& pi, std::function<Vec(const Vec&)> eval,
                        std::function<Mat(const Vec&)> jacobian) {
    SprayField s;
    s.chart = pi.chart();
    s.pi = pi;
    s.kind = SprayKind::Custom;
    s.eval = std::move(eval);
    s.jacobian = std::move(jacobian);
    return s;
}

AxiomReport check_spray_axiom1(const SprayField& spray, const std::vector<Vec>& samples) {
    const int n = spray.chart.dim;
    AxiomReport report;
    for (const Vec& z : samples) {
        const Vec x = z.head(n), y = z.tail(n);
        const Vec base = spray.eval(z).head(n);
        const Vec expected = spray.pi.components(x).transpose() * y;
        report.max_defect = std::max(report.max_defect, max_abs(Vec(base - expected)));
        ++report.samples;
    }
    return report;
}

AxiomReport check_spray_homogeneity(const SprayField& spray, const std::vector<Vec>& samples,
                                    const std::vector<double>& scales) {
    const int n = spray.chart.dim;
    AxiomReport report;
    for (const Vec& z : samples) {
        const Vec v = spray.eval(z);
        for (double t : scales) {
            Vec zs = z;
            zs.tail(n) *= t;
            const Vec vs = spray.eval(zs);
            const double base_defect = max_abs(Vec(vs.head(n) - t * v.head(n)));
            const double vert_defect = max_abs(Vec(vs.tail(n) - t * t * v.tail(n)));
            report.max_defect = std::max({report.max_defect, base_defect, vert_defect});
            ++report.samples;
        }
    }
    return report;
}

std::vector<Vec> spray_samples(const Chart& chart, int count, double x_radius, double y_radius, uint64_t seed) {
    SampleGen gen(seed);
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        Vec z(2 * chart.dim);
        z.head(chart.dim) = gen.ball_point(chart.dim, x_radius);
        z.tail(chart.dim) = gen.ball_point(chart.dim, y_radius);
        out.push_back(z);
    }
    return out;
}

}  // namespace srt
