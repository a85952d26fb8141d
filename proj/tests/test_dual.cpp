#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srt/dual.hpp"

using namespace srt;

TEST_CASE("dual arithmetic propagates exact derivatives") {
    // f(a, b) = a * b + sin(a) / b at (0.7, 1.3)
    const Vec x = (Vec(2) << 0.7, 1.3).finished();
    const DualVec v = seed_variables(x);
    const Dual f = v[0] * v[1] + sin(v[0]) / v[1];

    const double a = x[0], b = x[1];
    CHECK(f.value() == doctest::Approx(a * b + std::sin(a) / b).epsilon(1e-15));
    CHECK(f.grad()[0] == doctest::Approx(b + std::cos(a) / b).epsilon(1e-14));
    CHECK(f.grad()[1] == doctest::Approx(a - std::sin(a) / (b * b)).epsilon(1e-14));
}

TEST_CASE("constants carry empty gradients and mix with variables") {
    const Dual c = 2.5;
    CHECK(c.constant());
    const Dual v = Dual::variable(3.0, 4, 2);
    const Dual p = c * v + 1.0;
    CHECK(p.value() == doctest::Approx(8.5));
    CHECK(p.grad().size() == 4);
    CHECK(p.grad()[2] == doctest::Approx(2.5));
    CHECK(p.grad()[0] == 0.0);
}

TEST_CASE("elementary functions") {
    const Dual v = Dual::variable(0.4, 1, 0);
    CHECK(exp(v).grad()[0] == doctest::Approx(std::exp(0.4)).epsilon(1e-15));
    CHECK(sqrt(v).grad()[0] == doctest::Approx(0.5 / std::sqrt(0.4)).epsilon(1e-15));
    CHECK(cos(v).grad()[0] == doctest::Approx(-std::sin(0.4)).epsilon(1e-15));
    CHECK((-v).grad()[0] == doctest::Approx(-1.0));
}

TEST_CASE("dual_jacobian matches central differences on a nonlinear map") {
    auto f = [](const DualVec& z) {
        DualVec out(2);
        out[0] = z[0] * z[0] * z[1] + sin(z[2]);
        out[1] = exp(z[0]) - z[1] * z[2];
        return out;
    };
    const Vec x = (Vec(3) << 0.3, -0.8, 1.1).finished();
    const Mat jac = dual_jacobian(f, x);

    auto fv = [&](const Vec& p) {
        Vec out(2);
        out[0] = p[0] * p[0] * p[1] + std::sin(p[2]);
        out[1] = std::exp(p[0]) - p[1] * p[2];
        return out;
    };
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
        Vec hi = x, lo = x;
        hi[j] += h;
        lo[j] -= h;
        const Vec col = (fv(hi) - fv(lo)) / (2.0 * h);
        for (int i = 0; i < 2; ++i) CHECK(jac(i, j) == doctest::Approx(col[i]).epsilon(1e-8));
    }
}

TEST_CASE("dual_gradient of a scalar") {
    const Vec x = (Vec(2) << 1.2, 0.5).finished();
    const Vec g = dual_gradient([](const DualVec& z) { return z[0] * z[1] * z[1]; }, x);
    CHECK(g[0] == doctest::Approx(0.25));
    CHECK(g[1] == doctest::Approx(1.2));
}
