#include "srt/polynomial.hpp"

#include <cmath>

namespace srt {

namespace {

double monomial_value(const std::vector<int>& exp, const Vec& x) {
    double v = 1.0;
    for (size_t k = 0; k < exp.size(); ++k)
        for (int e = 0; e < exp[k]; ++e) v *= x[static_cast<long>(k)];
    return v;
}

Dual monomial_value_dual(const std::vector<int>& exp, const DualVec& x) {
    Dual v(1.0);
    for (size_t k = 0; k < exp.size(); ++k)
        for (int e = 0; e < exp[k]; ++e) v = v * x[k];
    return v;
}

// d/dx_k of the monomial
double monomial_d(const std::vector<int>& exp, const Vec& x, int k) {
    const int ek = exp[static_cast<size_t>(k)];
    if (ek == 0) return 0.0;
    std::vector<int> e = exp;
    e[static_cast<size_t>(k)] -= 1;
    return ek * monomial_value(e, x);
}

double monomial_dd(const std::vector<int>& exp, const Vec& x, int k, int l) {
    const int ek = exp[static_cast<size_t>(k)];
    if (ek == 0) return 0.0;
    std::vector<int> e = exp;
    e[static_cast<size_t>(k)] -= 1;
    return ek * monomial_d(e, x, l);
}

}  // namespace

PolyBivector::PolyBivector(int n, const std::vector<PolyTerm>& terms) : n_(n) {
    if (n < 1) throw ConfigError("PolyBivector: dim must be >= 1");
    for (const PolyTerm& t : terms) {
        if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n) throw ConfigError("PolyBivector: index out of range");
        if (t.i == t.j) throw ConfigError("PolyBivector: diagonal entry (i == j) not allowed");
        if (static_cast<int>(t.exponents.size()) != n) throw ConfigError("PolyBivector: exponents length != dim");
        for (int e : t.exponents)
            if (e < 0) throw ConfigError("PolyBivector: negative exponent");
        const bool flip = t.i > t.j;
        const std::pair<int, int> key = flip ? std::make_pair(t.j, t.i) : std::make_pair(t.i, t.j);
        entries_[key].push_back({t.exponents, flip ? -t.coeff : t.coeff});
    }
}

Mat PolyBivector::components(const Vec& x) const {
    Mat out = Mat::Zero(n_, n_);
    for (const auto& [key, monos] : entries_) {
        double v = 0.0;
        for (const Monomial& m : monos) v += m.coeff * monomial_value(m.exp, x);
        out(key.first, key.second) += v;
        out(key.second, key.first) -= v;
    }
    return out;
}

Tensor3 PolyBivector::d_components(const Vec& x) const {
    Tensor3 out(n_);
    for (const auto& [key, monos] : entries_)
        for (int k = 0; k < n_; ++k) {
            double v = 0.0;
            for (const Monomial& m : monos) v += m.coeff * monomial_d(m.exp, x, k);
            out(k, key.first, key.second) += v;
            out(k, key.second, key.first) -= v;
        }
    return out;
}

Tensor4 PolyBivector::dd_components(const Vec& x) const {
    Tensor4 out(n_);
    for (const auto& [key, monos] : entries_)
        for (int k = 0; k < n_; ++k)
            for (int l = 0; l < n_; ++l) {
                double v = 0.0;
                for (const Monomial& m : monos) v += m.coeff * monomial_dd(m.exp, x, k, l);
                out(k, l, key.first, key.second) += v;
                out(k, l, key.second, key.first) -= v;
            }
    return out;
}

std::vector<DualVec> PolyBivector::components_dual(const DualVec& x) const {
    std::vector<DualVec> out(static_cast<size_t>(n_), DualVec(static_cast<size_t>(n_), Dual(0.0)));
    for (const auto& [key, monos] : entries_) {
        Dual v(0.0);
        for (const Monomial& m : monos) v = v + Dual(m.coeff) * monomial_value_dual(m.exp, x);
        out[static_cast<size_t>(key.first)][static_cast<size_t>(key.second)] += v;
        out[static_cast<size_t>(key.second)][static_cast<size_t>(key.first)] -= v;
    }
    return out;
}

BivectorField PolyBivector::field(double domain_radius) const {
    const PolyBivector self = *this;
    return BivectorField::from_callbacks(
        Chart(n_, domain_radius), [self](const Vec& x) { return self.components(x); },
        [self](const Vec& x) { return self.d_components(x); },
        [self](const Vec& x) { return self.dd_components(x); }, DerivativeStrategy::analytic());
}

}  // namespace srt
