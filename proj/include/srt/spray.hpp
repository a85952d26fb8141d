#pragma once

#include <functional>
#include <vector>

#include "srt/bivector.hpp"
#include "srt/connections.hpp"

namespace srt {

enum class SprayKind { Basic, Geodesic, Custom };

/// A vector field on the 2n-dimensional chart cotangent space, in packed
/// coordinates z = (x, y). Built-in sprays carry exact base components
/// xdot_q = sum_p pi^{pq}(x) y_p and analytic jacobians.
struct SprayField {
    Chart chart;
    BivectorField pi;
    SprayKind kind = SprayKind::Custom;
    std::function<Vec(const Vec&)> eval;      // 2n -> 2n
    std::function<Mat(const Vec&)> jacobian;  // 2n x 2n
};

/// The simplest spray: (xdot, ydot) = (Pi(x)^T y, 0).
SprayField basic_spray(const BivectorField& pi);

/// Geodesic spray of a contravariant connection:
/// xdot_q = sum_p pi^{pq} y_p, ydot_r = -sum_{p,q} G(r,p,q) y_p y_q.
/// The vertical x-derivative block of the jacobian uses the connection's
/// analytic dcoeffs when present and central differences otherwise.
SprayField geodesic_spray(const BivectorField& pi, const ContravariantConnection& conn);

/// User-supplied spray; quarantined by the realization pipeline unless it
/// passes the axiom checks.
SprayField custom_spray(const BivectorField& pi, std::function<Vec(const Vec&)> eval,
                        std::function<Mat(const Vec&)> jacobian);

struct AxiomReport {
    double max_defect = 0.0;
    int samples = 0;
};

/// Axiom 1: the base component of eval equals pi#(y) at x, per sample.
AxiomReport check_spray_axiom1(const SprayField& spray, const std::vector<Vec>& samples);

/// Axiom 2 in coordinates: xdot(x, t y) = t xdot(x, y) and
/// ydot(x, t y) = t^2 ydot(x, y), per sample and scale.
AxiomReport check_spray_homogeneity(const SprayField& spray, const std::vector<Vec>& samples,
                                    const std::vector<double>& scales);

/// Samples accepted by the axiom checks: packed (x, y) points with
/// |x| <= x_radius and |y| <= y_radius, deterministic in the seed.
std::vector<Vec> spray_samples(const Chart& chart, int count, double x_radius, double y_radius, uint64_t seed);

}  // namespace srt
