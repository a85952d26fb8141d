#include "srt/realization.hpp"

#include <algorithm>
#include <cmath>

#include "srt/rng.hpp"

namespace srt {

namespace {

constexpr uint64_t kQuarantineSeed = 0x517A11EDULL;
constexpr double kQuarantineTol = 1e-8;

void quarantine_custom_spray(const SprayField& spray, bool allow_custom) {
    if (spray.kind != SprayKind::Custom || allow_custom) return;
    const auto samples = spray_samples(spray.chart, 20, 0.4 * spray.chart.domain_radius,
                                       0.4 * spray.chart.domain_radius, kQuarantineSeed);
    const AxiomReport axiom1 = check_spray_axiom1(spray, samples);
    const AxiomReport homog = check_spray_homogeneity(spray, samples, {0.5, 2.0});
    if (axiom1.max_defect > kQuarantineTol || homog.max_defect > kQuarantineTol) {
        throw ConfigError("custom spray rejected: axiom defects " + std::to_string(axiom1.max_defect) + " / " +
                          std::to_string(homog.max_defect) + " exceed quarantine tolerance");
    }
}

FlowBundle run_flow(const BivectorField&, const SprayField& spray, const Vec& xi, const IntegratorConfig& cfg) {
    const FlowBundle bundle = integrate_flow(spray, xi, cfg);
    if (!bundle.complete()) throw DomainError("flow escaped the chart before t = 1");
    return bundle;
}

// Composite Simpson over the (uniform) grid; falls back to trapezoid on a
// trailing odd interval.
double quadrature(const std::vector<double>& ts, const std::vector<double>& f) {
    const size_t m = ts.size();
    double total = 0.0;
    size_t k = 0;
    while (k + 2 < m) {
        const double h = ts[k + 1] - ts[k];
        total += h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
        k += 2;
    }
    if (k + 1 < m) total += 0.5 * (ts[k + 1] - ts[k]) * (f[k] + f[k + 1]);
    return total;
}

}  // namespace

RealizationSample omega_at(const BivectorField& pi, const SprayField& spray, const Vec& xi,
                           const IntegratorConfig& cfg, bool allow_custom) {
    quarantine_custom_spray(spray, allow_custom);
    const int n = pi.chart().dim;
    RealizationSample sample;
    sample.xi = xi;
    const FlowBundle bundle = integrate_flow(spray, xi, cfg);
    sample.status = bundle.status;
    sample.escape_time = bundle.escape_time;
    if (!bundle.complete()) return sample;

    sample.omega = bundle.omega_matrix();
    sample.det = sample.omega.determinant();
    if (std::abs(sample.det) >= kDetFloor) {
        sample.omega_inv = sample.omega.partialPivLu().inverse();
        sample.nondegenerate = true;
        const Mat pushed = sample.omega_inv.topLeftCorner(n, n);
        sample.poisson_defect = max_abs(Mat(pushed - pi.components(Vec(xi.head(n)))));
    }
    return sample;
}

Mat zero_section_formula(const BivectorField& pi, const Vec& x) {
    const int n = pi.chart().dim;
    Mat out = Mat::Zero(2 * n, 2 * n);
    out.topRightCorner(n, n) = Mat::Identity(n, n);
    out.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    out.bottomRightCorner(n, n) = pi.components(x);
    return out;
}

double nondegeneracy_radius(const BivectorField& pi, const SprayField& spray, const Vec& x,
                            const IntegratorConfig& cfg, int directions, double delta, double eps_max,
                            uint64_t seed) {
    const int n = pi.chart().dim;
    SampleGen gen(seed);
    std::vector<Vec> dirs;
    dirs.reserve(static_cast<size_t>(directions));
    for (int k = 0; k < directions; ++k) dirs.push_back(gen.unit_vector(n));

    auto admissible = [&](double eps) {
        for (const Vec& u : dirs) {
            Vec xi(2 * n);
            xi.head(n) = x;
            xi.tail(n) = eps * u;
            try {
                const RealizationSample s = omega_at(pi, spray, xi, cfg);
                if (s.status != FlowStatus::Complete || std::abs(s.det) < delta) return false;
            } catch (const DomainError&) {
                return false;
            }
        }
        return true;
    };

    if (admissible(eps_max)) return eps_max;
    double lo = 0.0, hi = eps_max;
    const double resolution = 1e-3 * eps_max;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? lo : hi) = mid;
    }
    return lo;
}

double orthogonality_defect(const BivectorField& pi, const SprayField& spray, const Vec& xi,
                            const IntegratorConfig& cfg) {
    const int n = pi.chart().dim;
    const FlowBundle bundle = run_flow(pi, spray, xi, cfg);
    const Mat p_j1 = bundle.final_jacobian().topRows(n);  // P J(1), n x 2n

    Eigen::FullPivLU<Mat> lu(p_j1);
    if (lu.rank() != n) throw NumericError("orthogonality_defect: P J(1) rank-deficient");
    Mat kernel = lu.kernel();  // 2n x n
    for (int c = 0; c < kernel.cols(); ++c) kernel.col(c).normalize();

    const Mat& omega = bundle.omega_matrix();
    double defect = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec vertical = Vec::Zero(2 * n);
        vertical[n + i] = 1.0;
        for (int c = 0; c < kernel.cols(); ++c)
            defect = std::max(defect, std::abs(vertical.dot(omega * kernel.col(c))));
    }
    return defect;
}

namespace {

struct BoundaryData {
    FlowBundle bundle;
    CotangentPath path;
    SampledPath v_base, v_theta, w_base, w_theta;
    SampledPath tv, tw;  // transported theta-tilde paths
};

BoundaryData boundary_data(const BivectorField& pi, const SprayField& spray, const Vec& xi, const Vec& v0,
                           const Vec& w0, const IntegratorConfig& cfg) {
    const int n = pi.chart().dim;
    BoundaryData d;
    d.bundle = run_flow(pi, spray, xi, cfg);
    d.path = d.bundle.cotangent_path();
    d.bundle.pushed_vector_paths(v0, d.v_base, d.v_theta);
    d.bundle.pushed_vector_paths(w0, d.w_base, d.w_theta);
    const Vec zero = Vec::Zero(n);
    d.tv = solve_transport(pi, d.path, d.v_theta, TransportCondition::initial(zero));
    d.tw = solve_transport(pi, d.path, d.w_theta, TransportCondition::initial(zero));
    return d;
}

double boundary_expression(const BivectorField& pi, const BoundaryData& d, size_t k) {
    const Vec& x = d.path.gamma.values[k];
    const Mat p = pi.components(x);
    return d.tw.values[k].dot(d.v_base.values[k]) - d.tv.values[k].dot(d.w_base.values[k]) -
           d.tv.values[k].dot(p * d.tw.values[k]);
}

}  // namespace

BoundaryFormulaResult boundary_formula(const BivectorField& pi, const SprayField& spray, const Vec& xi,
                                       const Vec& v0, const Vec& w0, const IntegratorConfig& cfg) {
    const BoundaryData d = boundary_data(pi, spray, xi, v0, w0, cfg);
    BoundaryFormulaResult result;
    result.lhs = v0.dot(d.bundle.omega_matrix() * w0);
    result.rhs = boundary_expression(pi, d, d.path.gamma.ts.size() - 1) - boundary_expression(pi, d, 0);
    result.defect = std::abs(result.lhs - result.rhs);
    return result;
}

GeneralBoundaryResult boundary_formula_defect_general(const BivectorField& pi, const SprayField& spray, const Vec& xi,
                                                      const Vec& v0, const Vec& w0, const IntegratorConfig& cfg) {
    const BoundaryData d = boundary_data(pi, spray, xi, v0, w0, cfg);
    GeneralBoundaryResult result;
    result.lhs = v0.dot(d.bundle.omega_matrix() * w0);
    result.rhs = boundary_expression(pi, d, d.path.gamma.ts.size() - 1) - boundary_expression(pi, d, 0);
    result.defect = result.lhs - result.rhs;

    const std::vector<double>& ts = d.path.gamma.ts;
    std::vector<double> integrand(ts.size());
    for (size_t k = 0; k < ts.size(); ++k) {
        const Tensor3 jac = jacobiator(pi, d.path.gamma.values[k]);
        integrand[k] = chi_contraction(jac, d.path.a.values[k], d.tv.values[k]).dot(d.tw.values[k]);
    }
    result.chi_integral = quadrature(ts, integrand);
    result.mismatch = std::abs(result.defect - kChiBoundaryScale * result.chi_integral);
    return result;
}

double poisson_map_covector_check(const BivectorField& pi, const SprayField& spray, const Vec& xi, const Vec& theta,
                                  const IntegratorConfig& cfg) {
    const int n = pi.chart().dim;
    const RealizationSample sample = omega_at(pi, spray, xi, cfg);
    if (sample.status != FlowStatus::Complete) throw DomainError("poisson_map_covector_check: flow escaped");
    if (!sample.nondegenerate) throw NumericError("poisson_map_covector_check: omega singular");

    // i_{v0} omega = p* theta in coordinates is omega^T v0 = P^T theta
    // (docs/conventions.md fixes the sign via the pi = 0 case).
    Vec rhs = Vec::Zero(2 * n);
    rhs.head(n) = theta;
    const Vec v0 = sample.omega.transpose().partialPivLu().solve(rhs);
    const Vec pushed = v0.head(n);
    const Vec expected = pi.components(Vec(xi.head(n))).transpose() * theta;
    return max_abs(Vec(pushed - expected));
}

double closedness_check(const BivectorField& pi, const SprayField& spray, const Vec& xi, const IntegratorConfig& cfg,
                        double h_fd) {
    const int n = pi.chart().dim;
    const int m = 2 * n;
    std::vector<Mat> domega(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        Vec xp = xi, xm = xi;
        xp[i] += h_fd;
        xm[i] -= h_fd;
        const RealizationSample sp = omega_at(pi, spray, xp, cfg);
        const RealizationSample sm = omega_at(pi, spray, xm, cfg);
        if (sp.status != FlowStatus::Complete || sm.status != FlowStatus::Complete)
            throw DomainError("closedness_check: displaced flow escaped");
        domega[static_cast<size_t>(i)] = (sp.omega - sm.omega) / (2.0 * h_fd);
    }
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                const double d = domega[static_cast<size_t>(i)](j, k) - domega[static_cast<size_t>(j)](i, k) +
                                 domega[static_cast<size_t>(k)](i, j);
                worst = std::max(worst, std::abs(d));
            }
    return worst;
}

ThreeForm ThreeForm::constant(Chart chart, const Tensor3& s0) {
    const int n = chart.dim;
    if (s0.extent() != n) throw ShapeError("ThreeForm: tensor extent != chart dim");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (std::abs(s0(i, j, k) + s0(j, i, k)) > 1e-12 || std::abs(s0(i, j, k) + s0(i, k, j)) > 1e-12)
                    throw ConfigError("ThreeForm: coefficients not fully antisymmetric");
            }
    ThreeForm f;
    f.chart = chart;
    f.sigma = [s0](const Vec&) { return s0; };
    f.cert = Cert::Assumed;
    return f;
}

ThreeForm ThreeForm::zero(Chart chart) { return ThreeForm::constant(chart, Tensor3(chart.dim)); }

double ThreeForm::d_sigma_fd(const Vec& x, double h) const {
    const int n = chart.dim;
    std::vector<Tensor3> ds(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const Tensor3 sp = sigma(xp), sm = sigma(xm);
        Tensor3 d(n);
        d.flat() = (sp.flat() - sm.flat()) / (2.0 * h);
        ds[static_cast<size_t>(i)] = d;
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    const double v = ds[static_cast<size_t>(i)](j, k, l) - ds[static_cast<size_t>(j)](i, k, l) +
                                     ds[static_cast<size_t>(k)](i, j, l) - ds[static_cast<size_t>(l)](i, j, k);
                    worst = std::max(worst, std::abs(v));
                }
    return worst;
}

Mat twisted_omega_at(const BivectorField& pi, const ThreeForm& sigma, const SprayField& spray, const Vec& xi,
                     const IntegratorConfig& cfg) {
    const int n = pi.chart().dim;
    auto integrand = [&pi, &sigma, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        const Vec u = pi.components(x).transpose() * y;  // pi# y
        const Tensor3 s = sigma.sigma(x);
        Mat out = Mat::Zero(2 * n, 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int k = 0; k < n; ++k) v += s(k, i, j) * u[k];
                out(i, j) = v;
            }
        return out;
    };
    const FlowBundle bundle = integrate_flow(spray, xi, cfg, integrand);
    if (!bundle.complete()) throw DomainError("twisted_omega_at: flow escaped");
    return bundle.omega_matrix();
}

}  // namespace srt
