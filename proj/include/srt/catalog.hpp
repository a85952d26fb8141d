#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srt/connections.hpp"
#include "srt/realization.hpp"

namespace srt {

/// A built-in bivector with analytic derivatives and machine-checkable facts.
struct CatalogEntry {
    std::string name;
    std::string description;
    BivectorField pi;
    bool is_poisson = true;
    double default_y_radius = 0.1;
    CotangentMetric default_metric;
    std::optional<ThreeForm> sigma;  // twisted entries only
    std::optional<std::function<Mat(const Vec&)>> closed_form_omega;
};

/// Built-in entries: zero, constant-symplectic, so3-star, sl2-star,
/// heisenberg, quadratic, non-poisson-witness, twisted-demo.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry& catalog_entry(const std::string& name);

std::vector<std::string> catalog_names();

}  // namespace srt
