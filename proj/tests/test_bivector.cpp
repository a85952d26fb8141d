#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srt/catalog.hpp"
#include "srt/polynomial.hpp"
#include "srt/rng.hpp"

using namespace srt;

namespace {

/// Independent jacobiator oracle: same contraction, but with derivatives
/// taken by central differences of the component matrix rather than through
/// the field's own derivative path.
Tensor3 jacobiator_fd_oracle(const BivectorField& pi, const Vec& x, double h = 1e-6) {
    const int n = pi.chart().dim;
    Tensor3 d(n);
    for (int k = 0; k < n; ++k) {
        Vec hi = x, lo = x;
        hi[k] += h;
        lo[k] -= h;
        const Mat diff = (pi.components(hi) - pi.components(lo)) / (2.0 * h);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d(k, i, j) = diff(i, j);
    }
    const Mat p = pi.components(x);
    Tensor3 jac(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += p(i, l) * d(l, j, k) + p(j, l) * d(l, k, i) + p(k, l) * d(l, i, j);
                jac(i, j, k) = s;
            }
    return jac;
}

}  // namespace

TEST_CASE("components are antisymmetrized and domain-checked") {
    const BivectorField pi = catalog_entry("so3-star").pi;
    const Vec x = (Vec(3) << 0.4, -0.2, 0.9).finished();
    const Mat p = pi.components(x);
    CHECK(max_abs(Mat(p + p.transpose())) == 0.0);
    CHECK(p(0, 1) == doctest::Approx(0.9));
    CHECK(p(1, 2) == doctest::Approx(0.4));
    CHECK(p(2, 0) == doctest::Approx(-0.2));
    CHECK_THROWS_AS(pi.components(Vec(Vec::Constant(3, 10.0))), DomainError);
}

TEST_CASE("sharp is Pi^T alpha") {
    const BivectorField pi = catalog_entry("so3-star").pi;
    const Vec x = (Vec(3) << 0.1, 0.2, 0.3).finished();
    const Vec alpha = (Vec(3) << 1.0, -1.0, 2.0).finished();
    const Vec s = sharp(pi, x, alpha);
    const Vec expect = pi.components(x).transpose() * alpha;
    CHECK(max_abs(Vec(s - expect)) == 0.0);
    // beta(pi# alpha) = pi(alpha, beta)
    const Vec beta = (Vec(3) << 0.5, 0.3, -0.2).finished();
    CHECK(pairing(beta, s) == doctest::Approx(alpha.dot(pi.components(x) * beta)).epsilon(1e-15));
}

TEST_CASE("jacobiator vanishes on Poisson entries and matches the FD oracle") {
    SampleGen gen(11);
    for (const char* name : {"so3-star", "sl2-star", "heisenberg", "quadratic"}) {
        const BivectorField pi = catalog_entry(name).pi;
        for (int s = 0; s < 5; ++s) {
            const Vec x = gen.ball_point(pi.chart().dim, 1.0);
            CHECK(jacobiator(pi, x).max_abs() <= 1e-12);
            CHECK(jacobiator_fd_oracle(pi, x).max_abs() <= 1e-8);
        }
    }
}

TEST_CASE("non-Poisson witness: J^{123}(1,1,1) = 3 exactly") {
    const BivectorField pi = catalog_entry("non-poisson-witness").pi;
    const Vec x = Vec::Ones(3);
    const Tensor3 jac = jacobiator(pi, x);
    CHECK(jac(0, 1, 2) == 3.0);
    // full antisymmetry of the jacobiator tensor
    CHECK(jac(1, 0, 2) == -3.0);
    CHECK(jac(2, 0, 1) == 3.0);
    CHECK(jac(0, 0, 2) == 0.0);
    // agreement with the independent oracle
    const Tensor3 oracle = jacobiator_fd_oracle(pi, x);
    CHECK(std::abs(jac(0, 1, 2) - oracle(0, 1, 2)) <= 1e-8);
}

TEST_CASE("jacobiator is quadratic in pi: scaling by 2 scales J by 4") {
    const PolyBivector base(3, {{0, 1, {1, 0, 0}, 1.0}, {1, 2, {0, 1, 0}, 1.0}, {2, 0, {0, 0, 1}, 1.0}});
    const PolyBivector doubled(3, {{0, 1, {1, 0, 0}, 2.0}, {1, 2, {0, 1, 0}, 2.0}, {2, 0, {0, 0, 1}, 2.0}});
    const Vec x = (Vec(3) << 0.7, -0.3, 0.4).finished();
    const Tensor3 j1 = jacobiator(base.field(4.0), x);
    const Tensor3 j2 = jacobiator(doubled.field(4.0), x);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) CHECK(j2(i, j, k) == doctest::Approx(4.0 * j1(i, j, k)).epsilon(1e-14));
}

TEST_CASE("cotangent bracket reproduces d pi^{ij} on constant coordinate forms") {
    // [dx_i, dx_j]_pi = d(pi^{ij}) since {x_i, x_j} = pi^{ij}
    const BivectorField pi = catalog_entry("sl2-star").pi;
    const Vec x = (Vec(3) << 0.4, 0.1, -0.6).finished();
    const Tensor3 d = pi.d_components(x);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vec br = cotangent_bracket(pi, CovectorFieldFn::constant(Vec(Vec::Unit(3, i))),
                                             CovectorFieldFn::constant(Vec(Vec::Unit(3, j))), x);
            for (int k = 0; k < 3; ++k) CHECK(br[k] == doctest::Approx(d(k, i, j)).epsilon(1e-12));
        }
}

TEST_CASE("cotangent bracket is antisymmetric on non-constant fields") {
    const BivectorField pi = catalog_entry("so3-star").pi;
    const Vec x = (Vec(3) << 0.2, 0.5, -0.1).finished();
    const CovectorFieldFn alpha = CovectorFieldFn::with_fd_jacobian(
        [](const Vec& p) { return Vec((Vec(3) << p[0] * p[1], std::sin(p[2]), 1.0).finished()); });
    const CovectorFieldFn beta = CovectorFieldFn::with_fd_jacobian(
        [](const Vec& p) { return Vec((Vec(3) << p[2], p[0] * p[0], -p[1]).finished()); });
    const Vec ab = cotangent_bracket(pi, alpha, beta, x);
    const Vec ba = cotangent_bracket(pi, beta, alpha, x);
    CHECK(max_abs(Vec(ab + ba)) <= 1e-8);
}

TEST_CASE("sharp_field jacobian agrees with finite differences") {
    const BivectorField pi = catalog_entry("so3-star").pi;
    const CovectorFieldFn alpha = CovectorFieldFn::constant((Vec(3) << 0.3, -0.4, 0.8).finished());
    const VectorFieldFn v = sharp_field(pi, alpha);
    const Vec x = (Vec(3) << 0.5, 0.2, -0.3).finished();
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
        Vec hi = x, lo = x;
        hi[j] += h;
        lo[j] -= h;
        const Vec col = (v.value(hi) - v.value(lo)) / (2.0 * h);
        for (int i = 0; i < 3; ++i) CHECK(v.jacobian(x)(i, j) == doctest::Approx(col[i]).epsilon(1e-7));
    }
}

TEST_CASE("PolyBivector derivatives are exact and consistent with duals") {
    const PolyBivector poly(2, {{0, 1, {0, 0}, 1.0}, {0, 1, {2, 0}, 1.0}});
    const Vec x = (Vec(2) << 0.6, -0.4).finished();
    CHECK(poly.components(x)(0, 1) == doctest::Approx(1.0 + 0.36).epsilon(1e-15));
    CHECK(poly.d_components(x)(0, 0, 1) == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(poly.d_components(x)(1, 0, 1) == 0.0);
    CHECK(poly.dd_components(x)(0, 0, 0, 1) == doctest::Approx(2.0).epsilon(1e-15));

    const BivectorField dual_field =
        BivectorField::from_dual(Chart(2, 4.0), [poly](const DualVec& z) { return poly.components_dual(z); });
    const Tensor3 da = poly.d_components(x);
    const Tensor3 db = dual_field.d_components(x);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(da(k, i, j) == doctest::Approx(db(k, i, j)).epsilon(1e-14));
}

TEST_CASE("from_callbacks central-difference fallback tracks the analytic path") {
    const PolyBivector poly(3, {{0, 1, {0, 0, 1}, 1.0}, {1, 2, {1, 0, 0}, 1.0}, {2, 0, {0, 1, 0}, 1.0}});
    const BivectorField analytic = poly.field(4.0);
    const BivectorField fd = BivectorField::from_callbacks(
        Chart(3, 4.0), [poly](const Vec& p) { return poly.components(p); });
    const Vec x = (Vec(3) << 0.3, -0.7, 0.2).finished();
    const Tensor3 da = analytic.d_components(x);
    const Tensor3 db = fd.d_components(x);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(std::abs(da(k, i, j) - db(k, i, j)) <= 1e-8);
    CHECK(jacobiator(fd, x).max_abs() <= 1e-8);
}

TEST_CASE("PolyBivector rejects malformed terms") {
    CHECK_THROWS_AS(PolyBivector(2, {{0, 0, {0, 0}, 1.0}}), ConfigError);      // diagonal entry
    CHECK_THROWS_AS(PolyBivector(2, {{0, 3, {0, 0}, 1.0}}), ConfigError);      // index out of range
    CHECK_THROWS_AS(PolyBivector(2, {{0, 1, {0, 0, 0}, 1.0}}), ConfigError);   // exponent arity
}
