#pragma once

#include <functional>
#include <vector>

#include "srt/bivector.hpp"

namespace srt {

/// A classical linear connection on the chart, given by Christoffel symbols
/// gamma(r,p,q) = Gamma^r_{pq}(x). The realization pipeline only ever uses
/// the flat chart connection (Gamma = 0); general input is supported for the
/// standalone operations.
struct ClassicalConnection {
    Chart chart;
    std::function<Tensor3(const Vec&)> christoffel;
    bool torsion_free = true;

    static ClassicalConnection flat(Chart chart);
};

/// A contravariant connection on T*M: nabla_{dx_p}(dx_q) = sum_r G(r,p,q) dx_r.
struct ContravariantConnection {
    Chart chart;
    std::function<Tensor3(const Vec&)> coeffs;            // (r,p,q)
    std::function<Tensor4(const Vec&)> dcoeffs = nullptr; // (k,r,p,q) = d_k G(r,p,q); optional
};

/// Metric on the cotangent fibers: g(x) symmetric positive-definite,
/// dg(k,i,j) = d_k g^{ij}.
struct CotangentMetric {
    Chart chart;
    std::function<Mat(const Vec&)> g;
    std::function<Tensor3(const Vec&)> dg;
    bool is_constant = false;

    static CotangentMetric identity(Chart chart);
    static CotangentMetric constant(Chart chart, const Mat& g0);
};

/// A path sampled on a grid. Nodal derivatives are optional; when present,
/// dense evaluation between nodes is cubic Hermite (matching the flow
/// engine's fourth-order accuracy), otherwise linear.
struct SampledPath {
    std::vector<double> ts;
    std::vector<Vec> values;
    std::vector<Vec> derivs;  // may be empty

    Vec at(double t) const;
    int dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
};

/// A cotangent path: covectors a(t) above the base path gamma(t), with
/// pi#(a(t)) = dgamma/dt.
struct CotangentPath {
    SampledPath gamma;
    SampledPath a;

    /// Max-norm defect of the compatibility condition at the grid nodes.
    double compatibility_defect(const BivectorField& pi) const;
};

/// nabla-bar_alpha(beta) = nabla_{pi# beta}(alpha) + [alpha, beta]_pi, at x.
Vec induced_contra_on_forms(const ClassicalConnection& nabla, const BivectorField& pi, const CovectorFieldFn& alpha,
                            const CovectorFieldFn& beta, const Vec& x);

/// nabla-bar_alpha(V) = pi# nabla_V(alpha) + [pi#(alpha), V], at x.
Vec induced_contra_on_vectors(const ClassicalConnection& nabla, const BivectorField& pi, const CovectorFieldFn& alpha,
                              const VectorFieldFn& v, const Vec& x);

/// nabla-bar_alpha(pi# beta) - pi#(nabla-bar_alpha(beta)); zero for Poisson pi,
/// and equal to the jacobiator contraction chi_contraction(J, alpha, beta) in
/// general (docs/conventions.md).
Vec compatibility_defect(const ClassicalConnection& nabla, const BivectorField& pi, const CovectorFieldFn& alpha,
                         const CovectorFieldFn& beta, const Vec& x);

/// (i_{alpha ^ beta} chi)_q = sum_{l,p} J^{lpq} alpha_l beta_p under the
/// toolkit normalization chi == J-contraction.
Vec chi_contraction(const Tensor3& jac, const Vec& alpha, const Vec& beta);

/// T(alpha, beta) = nabla_alpha beta - nabla_beta alpha - [alpha, beta]_pi for
/// constant-coefficient forms (the torsion is tensorial).
Vec contravariant_torsion(const ContravariantConnection& conn, const BivectorField& pi, const Vec& alpha,
                          const Vec& beta, const Vec& x);

/// The unique metric, torsion-free contravariant connection, via the Koszul
/// template with L_X -> L_{pi# alpha} and [.,.] -> [.,.]_pi. When the metric
/// is constant and pi has second derivatives, analytic coefficient
/// derivatives are attached as well.
ContravariantConnection levi_civita_contravariant(const CotangentMetric& g, const BivectorField& pi);

/// Koszul right-hand side contracted coefficients at one point (exposed for
/// independent cross-checks): returns G(r,p,q).
Tensor3 levi_civita_coeffs_at(const CotangentMetric& g, const BivectorField& pi, const Vec& x);

/// Covector-path derivative along a cotangent path with the flat classical
/// connection: (Du)_i = du_i/dt + sum_{p,j} d_i pi^{pj}(gamma) a_p u_j.
SampledPath transport_derivative_forms(const BivectorField& pi, const CotangentPath& path, const SampledPath& u);

/// Vector-path derivative, pairing-dual of the forms side:
/// (Dv)^j = dv^j/dt - sum_{i,p} d_i pi^{pj}(gamma) a_p v^i.
SampledPath transport_derivative_vectors(const BivectorField& pi, const CotangentPath& path, const SampledPath& v);

struct TransportCondition {
    enum class Kind { Initial, Final };
    Kind kind = Kind::Initial;
    Vec value;

    static TransportCondition initial(const Vec& v) { return {Kind::Initial, v}; }
    static TransportCondition final(const Vec& v) { return {Kind::Final, v}; }
};

/// Solves the linear transport ODE D(theta) = rhs along the cotangent path
/// with RK4 on the path's own grid, forward for an initial condition and
/// backward for a final one.
SampledPath solve_transport(const BivectorField& pi, const CotangentPath& path, const SampledPath& rhs,
                            const TransportCondition& condition);

}  // namespace srt
