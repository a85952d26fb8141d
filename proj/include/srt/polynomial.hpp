#pragma once

#include <map>
#include <utility>
#include <vector>

#include "srt/bivector.hpp"

namespace srt {

/// One monomial contribution to pi^{ij}: coeff * prod_k x_k^{exponents[k]}.
/// Indices are 0-based in code; the file format uses 1-based indices.
struct PolyTerm {
    int i = 0;
    int j = 0;
    std::vector<int> exponents;
    double coeff = 0.0;
};

/// Bivector with polynomial components. All derivatives are exact, obtained
/// by differentiating the monomials; this is the backing for every catalog
/// entry and for the polynomial input format shared with the CLI.
///
/// Supplying a term for (i, j) defines the (j, i) entry as its negative;
/// supplying both orientations is allowed and they accumulate independently.
class PolyBivector {
  public:
    PolyBivector(int n, const std::vector<PolyTerm>& terms);

    int dim() const { return n_; }

    Mat components(const Vec& x) const;
    Tensor3 d_components(const Vec& x) const;   // (k,i,j)
    Tensor4 dd_components(const Vec& x) const;  // (k,l,i,j)

    /// Dual-capable row-wise evaluation (used for cross-checks).
    std::vector<DualVec> components_dual(const DualVec& x) const;

    /// Wraps this polynomial as a BivectorField with analytic derivatives.
    BivectorField field(double domain_radius) const;

  private:
    struct Monomial {
        std::vector<int> exp;
        double coeff;
    };

    int n_;
    // upper-triangle storage: key (i, j) with i < j
    std::map<std::pair<int, int>, std::vector<Monomial>> entries_;
};

}  // namespace srt
