#pragma once

#include <functional>
#include <vector>

#include "srt/connections.hpp"
#include "srt/spray.hpp"

namespace srt {

struct IntegratorConfig {
    enum class Method { Rk4Fixed, Rk45Adaptive };

    Method method = Method::Rk4Fixed;
    int steps = 200;          // fixed RK4
    double rel_tol = 1e-10;   // adaptive
    double abs_tol = 1e-12;   // adaptive
    double escape_norm = 10.0;
    bool dense_output = true;

    void validate() const {
        if (method == Method::Rk4Fixed && steps < 8) throw ConfigError("IntegratorConfig: steps must be >= 8");
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("IntegratorConfig: tolerances must be > 0");
        if (!(escape_norm > 0.0)) throw ConfigError("IntegratorConfig: escape_norm must be > 0");
    }
};

enum class FlowStatus { Complete, Escaped };

/// Trajectory of the spray flow on [0, 1] together with the tangent flow
/// J(t) = d phi_t and the accumulator M(t) = int_0^t J^T Omega_can J ds.
/// Nodal time derivatives are retained for cubic-Hermite dense output.
struct FlowBundle {
    int n = 0;  // base dimension; states are 2n
    std::vector<double> ts;
    std::vector<Vec> states;
    std::vector<Mat> jacobians;
    std::vector<Mat> accumulators;
    std::vector<Vec> state_derivs;
    std::vector<Mat> jacobian_derivs;
    FlowStatus status = FlowStatus::Complete;
    double escape_time = 0.0;

    bool complete() const { return status == FlowStatus::Complete; }
    const Vec& final_state() const { return states.back(); }
    const Mat& final_jacobian() const { return jacobians.back(); }
    const Mat& omega_matrix() const { return accumulators.back(); }

    Vec state_at(double t) const;

    /// The flow trajectory as a cotangent path (a(t) = phi_t(xi)).
    CotangentPath cotangent_path() const;

    /// The pushed tangent vector t -> J(t) v0 split into base/vertical
    /// sampled paths with derivatives.
    void pushed_vector_paths(const Vec& v0, SampledPath& base, SampledPath& vertical) const;
};

/// Omega_can = [[0, I], [-I, 0]] in (x, y) block order.
Mat canonical_form_matrix(int n);

/// Integrates z' = V(z), J' = DV(z) J, M' = J^T Omega_can J as one coupled
/// system. The quadrature for omega is fused into the ODE so its order
/// matches the integrator's. The optional integrand replaces Omega_can with
/// a state-dependent matrix S(z) (used for the twisted correction).
FlowBundle integrate_flow(const SprayField& spray, const Vec& xi0, const IntegratorConfig& cfg,
                          const std::function<Mat(const Vec&)>& integrand = nullptr);

/// Closed form [[I, t Pi(x)^T], [0, I]] for the tangent flow at (x, 0);
/// oracle for the integrated jacobians on the zero section.
Mat tangent_flow_at_zero_section(const BivectorField& pi, const Vec& x, double t);

/// Integrates backward from phi_1(xi0); returns |x_back(0) - xi0|_max.
/// Escaped forward runs throw DomainError.
double flow_reversibility_check(const SprayField& spray, const Vec& xi0, const IntegratorConfig& cfg);

}  // namespace srt
