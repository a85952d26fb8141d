#include "srt/flow.hpp"

#include <algorithm>
#include <cmath>

namespace srt {

Mat canonical_form_matrix(int n) {
    Mat omega = Mat::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Mat::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return omega;
}

namespace {

struct FlowState {
    Vec z;
    Mat jac;
    Mat acc;
};

struct FlowDeriv {
    Vec z;
    Mat jac;
    Mat acc;
};

FlowState axpy(const FlowState& s, double h, const FlowDeriv& d) {
    return {Vec(s.z + h * d.z), Mat(s.jac + h * d.jac), Mat(s.acc + h * d.acc)};
}

}  // namespace

Vec FlowBundle::state_at(double t) const {
    SampledPath p{ts, states, state_derivs};
    return p.at(t);
}

CotangentPath FlowBundle::cotangent_path() const {
    CotangentPath path;
    path.gamma.ts = ts;
    path.a.ts = ts;
    for (size_t k = 0; k < states.size(); ++k) {
        path.gamma.values.push_back(states[k].head(n));
        path.a.values.push_back(states[k].tail(n));
        path.gamma.derivs.push_back(state_derivs[k].head(n));
        path.a.derivs.push_back(state_derivs[k].tail(n));
    }
    return path;
}

void FlowBundle::pushed_vector_paths(const Vec& v0, SampledPath& base, SampledPath& vertical) const {
    base = SampledPath{ts, {}, {}};
    vertical = SampledPath{ts, {}, {}};
    for (size_t k = 0; k < jacobians.size(); ++k) {
        const Vec v = jacobians[k] * v0;
        const Vec dv = jacobian_derivs[k] * v0;
        base.values.push_back(v.head(n));
        base.derivs.push_back(dv.head(n));
        vertical.values.push_back(v.tail(n));
        vertical.derivs.push_back(dv.tail(n));
    }
}

FlowBundle integrate_flow(const SprayField& spray, const Vec& xi0, const IntegratorConfig& cfg,
                          const std::function<Mat(const Vec&)>& integrand) {
    cfg.validate();
    const int n = spray.chart.dim;
    require_dim(xi0, 2 * n, "integrate_flow initial state");
    spray.chart.require_inside(Vec(xi0.head(n)));

    const Mat omega_can = canonical_form_matrix(n);
    auto form = [&](const Vec& z) { return integrand ? integrand(z) : omega_can; };

    auto rhs = [&](const FlowState& s) -> FlowDeriv {
        const Vec vz = spray.eval(s.z);
        const Mat dv = spray.jacobian(s.z);
        return {vz, Mat(dv * s.jac), antisymmetrize(s.jac.transpose() * form(s.z) * s.jac)};
    };

    auto escaped = [&](const Vec& z) {
        return z.head(n).norm() >= spray.chart.domain_radius || z.norm() > cfg.escape_norm;
    };

    FlowBundle bundle;
    bundle.n = n;
    FlowState s{xi0, Mat::Identity(2 * n, 2 * n), Mat::Zero(2 * n, 2 * n)};

    auto record = [&](double t, const FlowState& st) {
        const FlowDeriv d = rhs(st);
        bundle.ts.push_back(t);
        bundle.states.push_back(st.z);
        bundle.jacobians.push_back(st.jac);
        bundle.accumulators.push_back(st.acc);
        bundle.state_derivs.push_back(d.z);
        bundle.jacobian_derivs.push_back(d.jac);
    };

    try {
        record(0.0, s);
        if (cfg.method == IntegratorConfig::Method::Rk4Fixed) {
            const double h = 1.0 / cfg.steps;
            for (int k = 0; k < cfg.steps; ++k) {
                const FlowDeriv k1 = rhs(s);
                const FlowDeriv k2 = rhs(axpy(s, 0.5 * h, k1));
                const FlowDeriv k3 = rhs(axpy(s, 0.5 * h, k2));
                const FlowDeriv k4 = rhs(axpy(s, h, k3));
                s.z += (h / 6.0) * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
                s.jac += (h / 6.0) * (k1.jac + 2.0 * k2.jac + 2.0 * k3.jac + k4.jac);
                s.acc += antisymmetrize((h / 6.0) * (k1.acc + 2.0 * k2.acc + 2.0 * k3.acc + k4.acc));
                const double t = (k + 1) * h;
                if (escaped(s.z)) {
                    bundle.status = FlowStatus::Escaped;
                    bundle.escape_time = t;
                    return bundle;
                }
                record(t, s);
            }
        } else {
            // Fehlberg 4(5), error controlled on the trajectory components.
            static const double a[6][5] = {{0, 0, 0, 0, 0},
                                           {1.0 / 4, 0, 0, 0, 0},
                                           {3.0 / 32, 9.0 / 32, 0, 0, 0},
                                           {1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197, 0, 0},
                                           {439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104, 0},
                                           {-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40}};
            static const double b5[6] = {16.0 / 135, 0, 6656.0 / 12825, 28561.0 / 56430, -9.0 / 50, 2.0 / 55};
            static const double b4[6] = {25.0 / 216, 0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0};

            double t = 0.0;
            double h = 1.0 / cfg.steps;
            const double h_min = 1e-8;
            while (t < 1.0) {
                h = std::min(h, 1.0 - t);
                FlowDeriv k[6];
                k[0] = rhs(s);
                for (int stage = 1; stage < 6; ++stage) {
                    FlowState sk = s;
                    for (int j = 0; j < stage; ++j) sk = axpy(sk, h * a[stage][j], k[j]);
                    k[stage] = rhs(sk);
                }
                Vec z5 = s.z, z4 = s.z;
                for (int stage = 0; stage < 6; ++stage) {
                    z5 += h * b5[stage] * k[stage].z;
                    z4 += h * b4[stage] * k[stage].z;
                }
                const double scale = cfg.abs_tol + cfg.rel_tol * s.z.norm();
                const double err = (z5 - z4).norm() / scale;
                if (err <= 1.0 || h <= h_min) {
                    FlowState next = s;
                    for (int stage = 0; stage < 6; ++stage) {
                        next.z += h * b5[stage] * k[stage].z;
                        next.jac += h * b5[stage] * k[stage].jac;
                        next.acc += h * b5[stage] * k[stage].acc;
                    }
                    next.acc = antisymmetrize(next.acc);
                    t += h;
                    s = next;
                    if (escaped(s.z)) {
                        bundle.status = FlowStatus::Escaped;
                        bundle.escape_time = t;
                        return bundle;
                    }
                    record(t, s);
                }
                const double factor = err > 0.0 ? 0.9 * std::pow(1.0 / err, 0.2) : 5.0;
                h *= std::clamp(factor, 0.2, 5.0);
                h = std::max(h, h_min);
            }
        }
    } catch (const DomainError&) {
        // a Runge-Kutta stage left the chart ball
        bundle.status = FlowStatus::Escaped;
        bundle.escape_time = bundle.ts.empty() ? 0.0 : bundle.ts.back();
    }
    return bundle;
}

Mat tangent_flow_at_zero_section(const BivectorField& pi, const Vec& x, double t) {
    const int n = pi.chart().dim;
    Mat out = Mat::Identity(2 * n, 2 * n);
    out.topRightCorner(n, n) = t * pi.components(x).transpose();
    return out;
}

double flow_reversibility_check(const SprayField& spray, const Vec& xi0, const IntegratorConfig& cfg) {
    const FlowBundle forward = integrate_flow(spray, xi0, cfg);
    if (!forward.complete()) throw DomainError("flow_reversibility_check: forward trajectory escaped");
    SprayField reversed = spray;
    auto eval = spray.eval;
    auto jac = spray.jacobian;
    reversed.eval = [eval](const Vec& z) { return Vec(-eval(z)); };
    reversed.jacobian = [jac](const Vec& z) { return Mat(-jac(z)); };
    const FlowBundle back = integrate_flow(reversed, forward.final_state(), cfg);
    if (!back.complete()) throw DomainError("flow_reversibility_check: backward trajectory escaped");
    return max_abs(Vec(back.final_state() - xi0));
}

}  // namespace srt
