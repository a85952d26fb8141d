#include "srt/bivector.hpp"

#include <memory>

namespace srt {

namespace {

Tensor3 central_diff_components(const BivectorField::ComponentFn& fn, const Vec& x, int n, double h) {
    Tensor3 d(n);
    for (int k = 0; k < n; ++k) {
        Vec xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        const Mat diff = (fn(xp) - fn(xm)) / (2.0 * h);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d(k, i, j) = diff(i, j);
    }
    return d;
}

Tensor4 central_diff_of_d(const BivectorField::DComponentFn& dfn, const Vec& x, int n, double h) {
    Tensor4 dd(n);
    for (int k = 0; k < n; ++k) {
        Vec xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        const Tensor3 dp = dfn(xp);
        const Tensor3 dm = dfn(xm);
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) dd(k, l, i, j) = (dp(l, i, j) - dm(l, i, j)) / (2.0 * h);
    }
    return dd;
}

}  // namespace

BivectorField BivectorField::from_callbacks(Chart chart, ComponentFn components, DComponentFn d_components,
                                            DDComponentFn dd_components, DerivativeStrategy strategy) {
    BivectorField f;
    f.chart_ = chart;
    f.raw_fn_ = std::move(components);
    f.d_fn_ = std::move(d_components);
    f.dd_fn_ = std::move(dd_components);
    f.strategy_ = strategy;
    f.provenance_ = f.d_fn_ ? "analytic" : "finite-difference";
    return f;
}

BivectorField BivectorField::from_dual(Chart chart, DualComponentFn components, DerivativeStrategy strategy) {
    BivectorField f;
    f.chart_ = chart;
    f.strategy_ = strategy;
    f.provenance_ = "dual-number";
    const int n = chart.dim;
    auto dual_fn = std::make_shared<DualComponentFn>(std::move(components));
    f.raw_fn_ = [dual_fn, n](const Vec& x) {
        DualVec xd(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) xd[static_cast<size_t>(i)] = Dual(x[i]);
        const auto rows = (*dual_fn)(xd);
        Mat out(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)].value();
        return out;
    };
    f.d_fn_ = [dual_fn, n](const Vec& x) {
        const auto rows = (*dual_fn)(seed_variables(x));
        Tensor3 d(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Dual& e = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (e.constant()) continue;
                for (int k = 0; k < n; ++k) d(k, i, j) = e.grad()[k];
            }
        return d;
    };
    return f;
}

Mat BivectorField::components(const Vec& x) const {
    chart_.require_inside(x);
    if (!raw_fn_) throw CapabilityError("BivectorField: no component evaluator");
    Mat a = raw_fn_(x);
    if (a.rows() != chart_.dim || a.cols() != chart_.dim) throw ShapeError("BivectorField: component matrix shape");
    return antisymmetrize(a);
}

Tensor3 BivectorField::d_components(const Vec& x) const {
    chart_.require_inside(x);
    if (d_fn_) return d_fn_(x);
    return central_diff_components(raw_fn_, x, chart_.dim, strategy_.h1);
}

Tensor4 BivectorField::dd_components(const Vec& x) const {
    chart_.require_inside(x);
    if (dd_fn_) return dd_fn_(x);
    if (d_fn_) return central_diff_of_d(d_fn_, x, chart_.dim, strategy_.h2);
    throw CapabilityError("BivectorField: second derivatives unavailable (no analytic d_components)");
}

CovectorFieldFn CovectorFieldFn::constant(const Vec& alpha) {
    const int n = static_cast<int>(alpha.size());
    return {[alpha](const Vec&) { return alpha; }, [n](const Vec&) { return Mat(Mat::Zero(n, n)); }};
}

CovectorFieldFn CovectorFieldFn::with_fd_jacobian(std::function<Vec(const Vec&)> value, double h) {
    auto v = std::make_shared<std::function<Vec(const Vec&)>>(std::move(value));
    auto jac = [v, h](const Vec& x) {
        const int n = static_cast<int>(x.size());
        Mat out(n, n);
        for (int j = 0; j < n; ++j) {
            Vec xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            out.col(j) = ((*v)(xp) - (*v)(xm)) / (2.0 * h);
        }
        return out;
    };
    return {[v](const Vec& x) { return (*v)(x); }, jac};
}

VectorFieldFn VectorFieldFn::constant(const Vec& v) {
    const int n = static_cast<int>(v.size());
    return {[v](const Vec&) { return v; }, [n](const Vec&) { return Mat(Mat::Zero(n, n)); }};
}

VectorFieldFn VectorFieldFn::with_fd_jacobian(std::function<Vec(const Vec&)> value, double h) {
    CovectorFieldFn c = CovectorFieldFn::with_fd_jacobian(std::move(value), h);
    return {c.value, c.jacobian};
}

Mat eval_bivector(const BivectorField& pi, const Vec& x) { return pi.components(x); }

Vec sharp(const BivectorField& pi, const Vec& x, const Vec& alpha) {
    require_dim(alpha, pi.chart().dim, "sharp covector");
    return Vec(pi.components(x).transpose() * alpha);
}

VectorFieldFn sharp_field(const BivectorField& pi, const CovectorFieldFn& alpha) {
    auto value = [&pi, alpha](const Vec& x) { return Vec(pi.components(x).transpose() * alpha.value(x)); };
    auto jac = [&pi, alpha](const Vec& x) {
        const int n = pi.chart().dim;
        const Mat p = pi.components(x);
        const Tensor3 dp = pi.d_components(x);
        const Vec a = alpha.value(x);
        const Mat da = alpha.jacobian(x);
        Mat out = Mat::Zero(n, n);  // out(q, i) = d_i (pi# alpha)^q
        for (int q = 0; q < n; ++q)
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int p_ = 0; p_ < n; ++p_) s += dp(i, p_, q) * a[p_] + p(p_, q) * da(p_, i);
                out(q, i) = s;
            }
        return out;
    };
    return {value, jac};
}

Tensor3 jacobiator(const BivectorField& pi, const Vec& x) {
    const int n = pi.chart().dim;
    const Mat p = pi.components(x);
    const Tensor3 dp = pi.d_components(x);
    Tensor3 jac(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += p(i, l) * dp(l, j, k) + p(j, l) * dp(l, k, i) + p(k, l) * dp(l, i, j);
                jac(i, j, k) = s;
            }
    return jac;
}

double pairing(const Vec& theta, const Vec& v) {
    if (theta.size() != v.size()) throw ShapeError("pairing: dimension mismatch");
    return theta.dot(v);
}

Vec cotangent_bracket(const BivectorField& pi, const CovectorFieldFn& alpha, const CovectorFieldFn& beta,
                      const Vec& x) {
    const int n = pi.chart().dim;
    const Mat p = pi.components(x);
    const Tensor3 dp = pi.d_components(x);
    const Vec a = alpha.value(x);
    const Vec b = beta.value(x);
    const Mat da = alpha.jacobian(x);
    const Mat db = beta.jacobian(x);
    require_dim(a, n, "cotangent_bracket alpha");
    require_dim(b, n, "cotangent_bracket beta");

    const Vec sharp_a = p.transpose() * a;  // X = pi# alpha
    const Vec sharp_b = p.transpose() * b;  // Y = pi# beta

    Vec out = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
        double lie_ab = 0.0, lie_ba = 0.0, dpi_ab = 0.0;
        for (int m = 0; m < n; ++m) {
            lie_ab += sharp_a[m] * db(i, m);
            lie_ba += sharp_b[m] * da(i, m);
            // d_i X^m and d_i Y^m
            double dx_m = 0.0, dy_m = 0.0;
            for (int q = 0; q < n; ++q) {
                dx_m += dp(i, q, m) * a[q] + p(q, m) * da(q, i);
                dy_m += dp(i, q, m) * b[q] + p(q, m) * db(q, i);
            }
            lie_ab += b[m] * dx_m;
            lie_ba += a[m] * dy_m;
        }
        for (int p_ = 0; p_ < n; ++p_)
            for (int q = 0; q < n; ++q)
                dpi_ab += dp(i, p_, q) * a[p_] * b[q] + p(p_, q) * (da(p_, i) * b[q] + a[p_] * db(q, i));
        out[i] = lie_ab - lie_ba - dpi_ab;
    }
    return out;
}

}  // namespace srt
