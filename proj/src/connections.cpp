#include "srt/connections.hpp"

#include <algorithm>
#include <cmath>

namespace srt {

ClassicalConnection ClassicalConnection::flat(Chart chart) {
    const int n = chart.dim;
    return {chart, [n](const Vec&) { return Tensor3(n); }, true};
}

CotangentMetric CotangentMetric::identity(Chart chart) {
    return CotangentMetric::constant(chart, Mat::Identity(chart.dim, chart.dim));
}

CotangentMetric CotangentMetric::constant(Chart chart, const Mat& g0) {
    const int n = chart.dim;
    if (g0.rows() != n || g0.cols() != n) throw ShapeError("CotangentMetric: metric matrix shape");
    CotangentMetric m;
    m.chart = chart;
    m.g = [g0](const Vec&) { return g0; };
    m.dg = [n](const Vec&) { return Tensor3(n); };
    m.is_constant = true;
    return m;
}

Vec SampledPath::at(double t) const {
    if (ts.empty()) throw ShapeError("SampledPath: empty path");
    if (t <= ts.front()) return values.front();
    if (t >= ts.back()) return values.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const size_t k1 = static_cast<size_t>(it - ts.begin());
    const size_t k0 = k1 - 1;
    const double h = ts[k1] - ts[k0];
    const double s = (t - ts[k0]) / h;
    if (derivs.size() == values.size()) {
        // cubic Hermite
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        return Vec(h00 * values[k0] + h10 * h * derivs[k0] + h01 * values[k1] + h11 * h * derivs[k1]);
    }
    return Vec((1.0 - s) * values[k0] + s * values[k1]);
}

double CotangentPath::compatibility_defect(const BivectorField& pi) const {
    if (gamma.ts.size() != a.ts.size()) throw ShapeError("CotangentPath: grid mismatch");
    double worst = 0.0;
    for (size_t k = 0; k < gamma.ts.size(); ++k) {
        Vec dg;
        if (gamma.derivs.size() == gamma.values.size()) {
            dg = gamma.derivs[k];
        } else {
            // one-sided at the ends, central inside
            const size_t last = gamma.ts.size() - 1;
            const size_t lo = k == 0 ? 0 : k - 1;
            const size_t hi = k == last ? last : k + 1;
            dg = (gamma.values[hi] - gamma.values[lo]) / (gamma.ts[hi] - gamma.ts[lo]);
        }
        const Vec defect = pi.components(gamma.values[k]).transpose() * a.values[k] - dg;
        worst = std::max(worst, max_abs(defect));
    }
    return worst;
}

namespace {

// (nabla_X alpha)_i = X^m (d_m alpha_i - Gamma^r_{mi} alpha_r)
Vec classical_covector_derivative(const ClassicalConnection& nabla, const CovectorFieldFn& alpha, const Vec& x,
                                  const Vec& x_dir) {
    const int n = nabla.chart.dim;
    const Mat da = alpha.jacobian(x);
    const Vec a = alpha.value(x);
    const Tensor3 gamma = nabla.christoffel(x);
    Vec out = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) {
            s += x_dir[m] * da(i, m);
            for (int r = 0; r < n; ++r) s -= x_dir[m] * gamma(r, m, i) * a[r];
        }
        out[i] = s;
    }
    return out;
}

}  // namespace

Vec induced_contra_on_forms(const ClassicalConnection& nabla, const BivectorField& pi, const CovectorFieldFn& alpha,
                            const CovectorFieldFn& beta, const Vec& x) {
    const Vec sharp_b = pi.components(x).transpose() * beta.value(x);
    return classical_covector_derivative(nabla, alpha, x, sharp_b) + cotangent_bracket(pi, alpha, beta, x);
}

Vec induced_contra_on_vectors(const ClassicalConnection& nabla, const BivectorField& pi, const CovectorFieldFn& alpha,
                              const VectorFieldFn& v, const Vec& x) {
    const int n = nabla.chart.dim;
    const Mat p = pi.components(x);
    const Vec vv = v.value(x);
    const Mat dv = v.jacobian(x);

    const Vec nabla_v_alpha = classical_covector_derivative(nabla, alpha, x, vv);
    const Vec first = p.transpose() * nabla_v_alpha;

    const VectorFieldFn xfield = sharp_field(pi, alpha);
    const Vec xv = xfield.value(x);
    const Mat dx = xfield.jacobian(x);
    Vec commutator = Vec::Zero(n);
    for (int q = 0; q < n; ++q) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += xv[m] * dv(q, m) - vv[m] * dx(q, m);
        commutator[q] = s;
    }
    return first + commutator;
}

Vec compatibility_defect(const ClassicalConnection& nabla, const BivectorField& pi, const CovectorFieldFn& alpha,
                         const CovectorFieldFn& beta, const Vec& x) {
    const Vec lhs = induced_contra_on_vectors(nabla, pi, alpha, sharp_field(pi, beta), x);
    const Vec rhs = pi.components(x).transpose() * induced_contra_on_forms(nabla, pi, alpha, beta, x);
    return lhs - rhs;
}

Vec chi_contraction(const Tensor3& jac, const Vec& alpha, const Vec& beta) {
    const int n = jac.extent();
    Vec out = Vec::Zero(n);
    for (int q = 0; q < n; ++q) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
            for (int p = 0; p < n; ++p) s += jac(l, p, q) * alpha[l] * beta[p];
        out[q] = s;
    }
    return out;
}

Vec contravariant_torsion(const ContravariantConnection& conn, const BivectorField& pi, const Vec& alpha,
                          const Vec& beta, const Vec& x) {
    const int n = conn.chart.dim;
    const Tensor3 g = conn.coeffs(x);
    const Tensor3 dp = pi.d_components(x);
    Vec out = Vec::Zero(n);
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                s += (g(r, p, q) - g(r, q, p)) * alpha[p] * beta[q] - dp(r, p, q) * alpha[p] * beta[q];
        out[r] = s;
    }
    return out;
}

Tensor3 levi_civita_coeffs_at(const CotangentMetric& metric, const BivectorField& pi, const Vec& x) {
    const int n = metric.chart.dim;
    const Mat p = pi.components(x);
    const Tensor3 dp = pi.d_components(x);
    const Mat g = metric.g(x);
    const Tensor3 dg = metric.dg(x);

    Eigen::LDLT<Mat> solver(g);
    if (solver.info() != Eigen::Success) throw NumericError("levi_civita: metric not positive-definite");

    Tensor3 out(n);
    Vec k(n);
    for (int pp = 0; pp < n; ++pp)
        for (int q = 0; q < n; ++q) {
            for (int r = 0; r < n; ++r) {
                double s = 0.0;
                for (int m = 0; m < n; ++m)
                    s += p(pp, m) * dg(m, q, r) + p(q, m) * dg(m, pp, r) - p(r, m) * dg(m, pp, q);
                for (int i = 0; i < n; ++i)
                    s += dp(i, pp, q) * g(i, r) - dp(i, pp, r) * g(i, q) - dp(i, q, r) * g(i, pp);
                k[r] = 0.5 * s;
            }
            const Vec coeff = solver.solve(k);
            for (int r = 0; r < n; ++r) out(r, pp, q) = coeff[r];
        }
    return out;
}

ContravariantConnection levi_civita_contravariant(const CotangentMetric& metric, const BivectorField& pi) {
    ContravariantConnection conn;
    conn.chart = metric.chart;
    conn.coeffs = [metric, pi](const Vec& x) { return levi_civita_coeffs_at(metric, pi, x); };
    if (metric.is_constant && pi.has_dd()) {
        conn.dcoeffs = [metric, pi](const Vec& x) {
            const int n = metric.chart.dim;
            const Mat g = metric.g(x);
            const Tensor4 ddp = pi.dd_components(x);
            Eigen::LDLT<Mat> solver(g);
            Tensor4 out(n);
            Vec k(n);
            for (int kk = 0; kk < n; ++kk)
                for (int pp = 0; pp < n; ++pp)
                    for (int q = 0; q < n; ++q) {
                        for (int r = 0; r < n; ++r) {
                            double s = 0.0;
                            for (int i = 0; i < n; ++i)
                                s += ddp(kk, i, pp, q) * g(i, r) - ddp(kk, i, pp, r) * g(i, q) -
                                     ddp(kk, i, q, r) * g(i, pp);
                            k[r] = 0.5 * s;
                        }
                        const Vec coeff = solver.solve(k);
                        for (int r = 0; r < n; ++r) out(kk, r, pp, q) = coeff[r];
                    }
            return out;
        };
    }
    return conn;
}

namespace {

void check_grids(const CotangentPath& path, const SampledPath& u, const char* what) {
    if (path.gamma.ts.size() != u.ts.size() || path.a.ts.size() != u.ts.size())
        throw ShapeError(std::string(what) + ": grid mismatch");
}

// B(t)(i,j) = sum_p d_i pi^{pj}(gamma(t)) a_p(t)
Mat correction_matrix(const BivectorField& pi, const Vec& gamma, const Vec& a) {
    const int n = pi.chart().dim;
    const Tensor3 dp = pi.d_components(gamma);
    Mat b = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int p = 0; p < n; ++p) s += dp(i, p, j) * a[p];
            b(i, j) = s;
        }
    return b;
}

}  // namespace

SampledPath transport_derivative_forms(const BivectorField& pi, const CotangentPath& path, const SampledPath& u) {
    check_grids(path, u, "transport_derivative_forms");
    if (u.derivs.size() != u.values.size()) throw CapabilityError("transport_derivative_forms: u derivatives required");
    SampledPath out;
    out.ts = u.ts;
    out.values.reserve(u.ts.size());
    for (size_t k = 0; k < u.ts.size(); ++k) {
        const Mat b = correction_matrix(pi, path.gamma.values[k], path.a.values[k]);
        out.values.push_back(Vec(u.derivs[k] + b * u.values[k]));
    }
    return out;
}

SampledPath transport_derivative_vectors(const BivectorField& pi, const CotangentPath& path, const SampledPath& v) {
    check_grids(path, v, "transport_derivative_vectors");
    if (v.derivs.size() != v.values.size())
        throw CapabilityError("transport_derivative_vectors: v derivatives required");
    SampledPath out;
    out.ts = v.ts;
    out.values.reserve(v.ts.size());
    for (size_t k = 0; k < v.ts.size(); ++k) {
        const Mat b = correction_matrix(pi, path.gamma.values[k], path.a.values[k]);
        out.values.push_back(Vec(v.derivs[k] - b.transpose() * v.values[k]));
    }
    return out;
}

SampledPath solve_transport(const BivectorField& pi, const CotangentPath& path, const SampledPath& rhs,
                            const TransportCondition& condition) {
    check_grids(path, rhs, "solve_transport");
    const size_t nodes = path.gamma.ts.size();
    if (nodes < 2) throw ShapeError("solve_transport: need at least two grid nodes");

    auto f = [&](double t, const Vec& u) -> Vec {
        const Vec gamma = path.gamma.at(t);
        const Vec a = path.a.at(t);
        return Vec(rhs.at(t) - correction_matrix(pi, gamma, a) * u);
    };

    SampledPath out;
    out.ts = path.gamma.ts;
    out.values.assign(nodes, Vec());

    const bool forward = condition.kind == TransportCondition::Kind::Initial;
    Vec u = condition.value;
    if (forward) {
        out.values[0] = u;
        for (size_t k = 0; k + 1 < nodes; ++k) {
            const double t0 = out.ts[k];
            const double h = out.ts[k + 1] - t0;
            const Vec k1 = f(t0, u);
            const Vec k2 = f(t0 + 0.5 * h, Vec(u + 0.5 * h * k1));
            const Vec k3 = f(t0 + 0.5 * h, Vec(u + 0.5 * h * k2));
            const Vec k4 = f(t0 + h, Vec(u + h * k3));
            u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            out.values[k + 1] = u;
        }
    } else {
        out.values[nodes - 1] = u;
        for (size_t k = nodes - 1; k > 0; --k) {
            const double t0 = out.ts[k];
            const double h = out.ts[k - 1] - t0;  // negative
            const Vec k1 = f(t0, u);
            const Vec k2 = f(t0 + 0.5 * h, Vec(u + 0.5 * h * k1));
            const Vec k3 = f(t0 + 0.5 * h, Vec(u + 0.5 * h * k2));
            const Vec k4 = f(t0 + h, Vec(u + h * k3));
            u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            out.values[k - 1] = u;
        }
    }
    out.derivs.reserve(nodes);
    for (size_t k = 0; k < nodes; ++k) out.derivs.push_back(f(out.ts[k], out.values[k]));
    return out;
}

}  // namespace srt
