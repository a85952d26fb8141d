#pragma once

#include "srt/linalg.hpp"

namespace srt {

/// A single coordinate chart: an open origin-centered ball in R^n on which
/// every field of the toolkit is declared. Evaluation outside the ball is an
/// error, never an extrapolation.
struct Chart {
    int dim = 0;
    double domain_radius = 0.0;

    Chart() = default;
    Chart(int n, double radius) : dim(n), domain_radius(radius) {
        if (n < 1) throw ConfigError("Chart: dim must be >= 1");
        if (!(radius > 0.0)) throw ConfigError("Chart: domain_radius must be > 0");
    }

    bool contains(const Vec& x) const { return x.size() == dim && x.norm() < domain_radius; }

    void require_inside(const Vec& x) const {
        require_dim(x, dim, "Chart point");
        if (!(x.norm() < domain_radius)) {
            throw DomainError("point with |x| = " + std::to_string(x.norm()) +
                              " outside chart ball of radius " + std::to_string(domain_radius));
        }
    }
};

}  // namespace srt
