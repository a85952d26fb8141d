#pragma once

#include <functional>
#include <optional>
#include <string>

#include "srt/chart.hpp"
#include "srt/dual.hpp"
#include "srt/linalg.hpp"

namespace srt {

/// How first/second spatial derivatives of a field are produced, and the
/// accuracy one may expect from them.
struct DerivativeStrategy {
    enum class Mode { Analytic, CentralDiff, DualNumber };

    Mode mode = Mode::Analytic;
    double h1 = 1e-5;  // first-derivative differencing step
    double h2 = 1e-3;  // second-derivative differencing step
    double tol = 1e-9;

    static DerivativeStrategy analytic() { return {Mode::Analytic, 1e-5, 1e-3, 1e-9}; }
    static DerivativeStrategy central(double h1 = 1e-5, double h2 = 1e-3) {
        return {Mode::CentralDiff, h1, h2, 1e-6};
    }
    static DerivativeStrategy dual() { return {Mode::DualNumber, 1e-5, 1e-3, 1e-9}; }
};

/// An antisymmetric bivector field on a chart: component matrix Pi(x) with
/// entries pi^{ij}(x), first derivatives d(k,i,j) = d_k pi^{ij}, and optional
/// second derivatives dd(k,l,i,j) = d_k d_l pi^{ij}.
class BivectorField {
  public:
    using ComponentFn = std::function<Mat(const Vec&)>;
    using DComponentFn = std::function<Tensor3(const Vec&)>;
    using DDComponentFn = std::function<Tensor4(const Vec&)>;
    using DualComponentFn = std::function<std::vector<DualVec>(const DualVec&)>;

    BivectorField() = default;

    /// Analytic callbacks. Missing derivative callbacks fall back to central
    /// differences of the level below.
    static BivectorField from_callbacks(Chart chart, ComponentFn components, DComponentFn d_components = nullptr,
                                        DDComponentFn dd_components = nullptr,
                                        DerivativeStrategy strategy = DerivativeStrategy::central());

    /// Dual-capable component evaluator; first derivatives come from forward
    /// mode, second derivatives from central differences of those.
    static BivectorField from_dual(Chart chart, DualComponentFn components,
                                   DerivativeStrategy strategy = DerivativeStrategy::dual());

    const Chart& chart() const { return chart_; }
    const DerivativeStrategy& strategy() const { return strategy_; }
    const std::string& provenance() const { return provenance_; }

    /// Pi(x), antisymmetrized, domain-checked.
    Mat components(const Vec& x) const;

    /// d(k,i,j) = d_k pi^{ij}(x).
    Tensor3 d_components(const Vec& x) const;

    bool has_dd() const { return static_cast<bool>(dd_fn_); }

    /// dd(k,l,i,j) = d_k d_l pi^{ij}(x); central-difference fallback over
    /// d_components when no analytic evaluator is present.
    Tensor4 dd_components(const Vec& x) const;

  private:
    Chart chart_;
    ComponentFn raw_fn_;
    DComponentFn d_fn_;
    DDComponentFn dd_fn_;
    DerivativeStrategy strategy_;
    std::string provenance_ = "analytic";
};

/// A covector field alpha(x) with its spatial jacobian jac(i,j) = d_j alpha_i.
struct CovectorFieldFn {
    std::function<Vec(const Vec&)> value;
    std::function<Mat(const Vec&)> jacobian;

    static CovectorFieldFn constant(const Vec& alpha);
    static CovectorFieldFn with_fd_jacobian(std::function<Vec(const Vec&)> value, double h = 1e-5);
};

/// A vector field V(x) with jac(i,j) = d_j V^i.
struct VectorFieldFn {
    std::function<Vec(const Vec&)> value;
    std::function<Mat(const Vec&)> jacobian;

    static VectorFieldFn constant(const Vec& v);
    static VectorFieldFn with_fd_jacobian(std::function<Vec(const Vec&)> value, double h = 1e-5);
};

/// Pi(x) as an antisymmetric matrix.
Mat eval_bivector(const BivectorField& pi, const Vec& x);

/// (pi# alpha)^q = sum_p pi^{pq}(x) alpha_p, i.e. Pi(x)^T alpha.
Vec sharp(const BivectorField& pi, const Vec& x, const Vec& alpha);

/// pi# of a covector field, as a vector field with analytic jacobian.
VectorFieldFn sharp_field(const BivectorField& pi, const CovectorFieldFn& alpha);

/// J^{ijk} = sum_l ( pi^{il} d_l pi^{jk} + pi^{jl} d_l pi^{ki} + pi^{kl} d_l pi^{ij} ).
/// Vanishes identically iff pi is Poisson. The toolkit's chi_pi defect
/// contractions are expressed directly in J (docs/conventions.md).
Tensor3 jacobiator(const BivectorField& pi, const Vec& x);

/// <theta, v> = sum_i theta_i v^i.
double pairing(const Vec& theta, const Vec& v);

/// [alpha, beta]_pi = L_{pi# alpha} beta - L_{pi# beta} alpha - d(pi(alpha, beta)),
/// evaluated at x from the fields' values and jacobians.
Vec cotangent_bracket(const BivectorField& pi, const CovectorFieldFn& alpha, const CovectorFieldFn& beta,
                      const Vec& x);

}  // namespace srt
