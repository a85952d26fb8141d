#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "srt/linalg.hpp"

namespace srt {

/// First-order forward-mode dual number carrying a dense gradient of runtime
/// length. A default-constructed Dual is a constant (empty gradient, read as
/// the zero gradient of whatever length its partner operands carry).
class Dual {
  public:
    Dual() : v_(0.0) {}
    Dual(double v) : v_(v) {}  // NOLINT: implicit by design, constants promote
    Dual(double v, Vec g) : v_(v), g_(std::move(g)) {}

    /// Seeds coordinate k of an m-dimensional independent variable.
    static Dual variable(double v, int m, int k) {
        Vec g = Vec::Zero(m);
        g[k] = 1.0;
        return Dual(v, std::move(g));
    }

    double value() const { return v_; }
    const Vec& grad() const { return g_; }
    bool constant() const { return g_.size() == 0; }

    Dual operator-() const { return Dual(-v_, -g_); }

    friend Dual operator+(const Dual& a, const Dual& b) { return Dual(a.v_ + b.v_, add(a.g_, b.g_)); }
    friend Dual operator-(const Dual& a, const Dual& b) { return Dual(a.v_ - b.v_, sub(a.g_, b.g_)); }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return Dual(a.v_ * b.v_, add(scaled(a.g_, b.v_), scaled(b.g_, a.v_)));
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        const double inv = 1.0 / b.v_;
        return Dual(a.v_ * inv, sub(scaled(a.g_, inv), scaled(b.g_, a.v_ * inv * inv)));
    }

    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }

    friend Dual sin(const Dual& a) { return Dual(std::sin(a.v_), scaled(a.g_, std::cos(a.v_))); }
    friend Dual cos(const Dual& a) { return Dual(std::cos(a.v_), scaled(a.g_, -std::sin(a.v_))); }
    friend Dual exp(const Dual& a) { return Dual(std::exp(a.v_), scaled(a.g_, std::exp(a.v_))); }
    friend Dual sqrt(const Dual& a) {
        const double s = std::sqrt(a.v_);
        return Dual(s, scaled(a.g_, 0.5 / s));
    }

  private:
    static Vec add(const Vec& a, const Vec& b) {
        if (a.size() == 0) return b;
        if (b.size() == 0) return a;
        return a + b;
    }
    static Vec sub(const Vec& a, const Vec& b) {
        if (b.size() == 0) return a;
        if (a.size() == 0) return Vec(-b);
        return a - b;
    }
    static Vec scaled(const Vec& a, double s) {
        if (a.size() == 0) return a;
        return Vec(a * s);
    }

    double v_;
    Vec g_;
};

using DualVec = std::vector<Dual>;

inline DualVec seed_variables(const Vec& x) {
    DualVec out(static_cast<size_t>(x.size()));
    for (int k = 0; k < x.size(); ++k) out[static_cast<size_t>(k)] = Dual::variable(x[k], static_cast<int>(x.size()), k);
    return out;
}

/// Jacobian of f at x via forward-mode duals; f maps DualVec -> DualVec.
inline Mat dual_jacobian(const std::function<DualVec(const DualVec&)>& f, const Vec& x) {
    const DualVec fx = f(seed_variables(x));
    Mat jac = Mat::Zero(static_cast<long>(fx.size()), x.size());
    for (size_t i = 0; i < fx.size(); ++i) {
        if (!fx[i].constant()) jac.row(static_cast<long>(i)) = fx[i].grad().transpose();
    }
    return jac;
}

inline Vec dual_gradient(const std::function<Dual(const DualVec&)>& f, const Vec& x) {
    const Dual fx = f(seed_variables(x));
    return fx.constant() ? Vec(Vec::Zero(x.size())) : fx.grad();
}

}  // namespace srt
