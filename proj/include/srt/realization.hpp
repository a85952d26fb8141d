#pragma once

#include <optional>

#include "srt/flow.hpp"

namespace srt {

/// Scale constants tying the jacobiator J to the defect terms of the
/// compatibility relation and of the boundary formula. Both are exactly 1
/// under the toolkit's conventions (see docs/conventions.md); they were
/// confirmed by calibration on the non-Poisson witness fixture and are
/// pinned here. The identification chi_pi = 2 J is recorded in report
/// metadata only.
inline constexpr double kChiEq4Scale = 1.0;
inline constexpr double kChiBoundaryScale = 1.0;

/// omega and its diagnostics at one cotangent point.
struct RealizationSample {
    Vec xi;
    Mat omega;
    Mat omega_inv;
    double det = 0.0;
    double poisson_defect = 0.0;
    FlowStatus status = FlowStatus::Complete;
    double escape_time = 0.0;
    bool nondegenerate = false;
};

/// Determinant floor below which a sample is flagged degenerate and no
/// inverse is reported.
inline constexpr double kDetFloor = 1e-12;

/// omega_xi = M(1) of the fused flow, with inverse, determinant and the
/// Poisson-map defect |(omega^-1)_xx - Pi(x)|_max. Custom sprays are
/// quarantined: they must pass the axiom checks unless allow_custom is set.
RealizationSample omega_at(const BivectorField& pi, const SprayField& spray, const Vec& xi,
                           const IntegratorConfig& cfg, bool allow_custom = false);

/// Closed form [[0, I], [-I, Pi(x)]] for omega on the zero section.
Mat zero_section_formula(const BivectorField& pi, const Vec& x);

/// Bisection for the largest covector radius eps <= eps_max at which omega
/// stays complete and nondegenerate (|det| >= delta) in K seeded unit
/// directions; resolution 1e-3 * eps_max.
double nondegeneracy_radius(const BivectorField& pi, const SprayField& spray, const Vec& x,
                            const IntegratorConfig& cfg, int directions, double delta, double eps_max,
                            uint64_t seed);

/// Max |omega(v, w)| over a basis of the vertical distribution ker dp and a
/// basis of ker(P J(1)); zero when F(p)-perp = F(p1) holds.
double orthogonality_defect(const BivectorField& pi, const SprayField& spray, const Vec& xi,
                            const IntegratorConfig& cfg);

struct BoundaryFormulaResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double defect = 0.0;
};

/// Transport-based boundary formula for omega(v0, w0): transports
/// theta-tilde along the flow path with initial value zero and compares
/// v0^T M(1) w0 against the boundary expression.
BoundaryFormulaResult boundary_formula(const BivectorField& pi, const SprayField& spray, const Vec& xi,
                                       const Vec& v0, const Vec& w0, const IntegratorConfig& cfg);

struct GeneralBoundaryResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double defect = 0.0;         // lhs - rhs
    double chi_integral = 0.0;   // int_0^1 sum J^{lpq} a_l tv_p tw_q dt
    double mismatch = 0.0;       // |defect - kChiBoundaryScale * chi_integral|
};

/// Boundary formula for general (possibly non-Poisson) bivectors together
/// with the independently quadratured jacobiator integral explaining the
/// defect.
GeneralBoundaryResult boundary_formula_defect_general(const BivectorField& pi, const SprayField& spray,
                                                      const Vec& xi, const Vec& v0, const Vec& w0,
                                                      const IntegratorConfig& cfg);

/// Solves omega(v0, .) = p* theta through the linear-solve path and returns
/// |dp(v0) - pi# theta|_max.
double poisson_map_covector_check(const BivectorField& pi, const SprayField& spray, const Vec& xi, const Vec& theta,
                                  const IntegratorConfig& cfg);

/// Finite-difference exterior derivative of omega at xi: max over coordinate
/// triples (i<j<k) of the 2n chart-cotangent coordinates.
double closedness_check(const BivectorField& pi, const SprayField& spray, const Vec& xi, const IntegratorConfig& cfg,
                        double h_fd);

/// A 3-form on the chart: fully antisymmetric sigma(i,j,k)(x).
struct ThreeForm {
    enum class Cert { Assumed, FdChecked };

    Chart chart;
    std::function<Tensor3(const Vec&)> sigma;
    Cert cert = Cert::Assumed;

    static ThreeForm constant(Chart chart, const Tensor3& s0);
    static ThreeForm zero(Chart chart);

    /// Max-norm of the finite-difference exterior derivative at x.
    double d_sigma_fd(const Vec& x, double h = 1e-4) const;
};

/// M_sigma(1) of the fused flow with integrand S(z)_{ab} =
/// sigma_x(pi# y, P e_a, P e_b); the twisted realization form is
/// omega + M_sigma(1).
Mat twisted_omega_at(const BivectorField& pi, const ThreeForm& sigma, const SprayField& spray, const Vec& xi,
                     const IntegratorConfig& cfg);

}  // namespace srt
