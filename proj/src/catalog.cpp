#include "srt/catalog.hpp"

#include "srt/polynomial.hpp"

namespace srt {

namespace {

constexpr double kDomainRadius = 4.0;

CatalogEntry make_entry(std::string name, std::string description, int n, const std::vector<PolyTerm>& terms,
                        bool is_poisson) {
    CatalogEntry entry;
    entry.name = std::move(name);
    entry.description = std::move(description);
    entry.pi = PolyBivector(n, terms).field(kDomainRadius);
    entry.is_poisson = is_poisson;
    entry.default_metric = CotangentMetric::identity(entry.pi.chart());
    return entry;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> entries;

    {
        CatalogEntry e = make_entry("zero", "pi = 0 on R^3", 3, {}, true);
        e.closed_form_omega = [](const Vec&) { return canonical_form_matrix(3); };
        entries.push_back(std::move(e));
    }
    {
        CatalogEntry e = make_entry("constant-symplectic", "constant pi^{12} = 1 on R^2", 2,
                                    {{0, 1, {0, 0}, 1.0}}, true);
        const BivectorField pi = e.pi;
        e.closed_form_omega = [pi](const Vec& xi) {
            Mat out = canonical_form_matrix(2);
            out.bottomRightCorner(2, 2) = pi.components(Vec(xi.head(2)));
            return out;
        };
        entries.push_back(std::move(e));
    }
    entries.push_back(make_entry("so3-star", "Lie-Poisson structure of so(3)*: pi^{ij} = eps_{ijk} x_k", 3,
                                 {{0, 1, {0, 0, 1}, 1.0}, {1, 2, {1, 0, 0}, 1.0}, {2, 0, {0, 1, 0}, 1.0}}, true));
    entries.push_back(make_entry("sl2-star",
                                 "Lie-Poisson structure of sl(2,R)* in the (h, e, f) basis",
                                 3, {{0, 1, {0, 1, 0}, 2.0}, {0, 2, {0, 0, 1}, -2.0}, {1, 2, {1, 0, 0}, 1.0}},
                                 true));
    entries.push_back(make_entry("heisenberg", "Heisenberg Lie-Poisson structure: {x1, x2} = x3", 3,
                                 {{0, 1, {0, 0, 1}, 1.0}}, true));
    entries.push_back(make_entry("quadratic", "pi^{12} = 1 + x1^2 on R^2", 2,
                                 {{0, 1, {0, 0}, 1.0}, {0, 1, {2, 0}, 1.0}}, true));
    entries.push_back(make_entry("non-poisson-witness",
                                 "pi^{12} = x1, pi^{23} = x2, pi^{31} = x3; fails the Jacobi identity", 3,
                                 {{0, 1, {1, 0, 0}, 1.0}, {1, 2, {0, 1, 0}, 1.0}, {2, 0, {0, 0, 1}, 1.0}}, false));
    {
        CatalogEntry e = make_entry("twisted-demo", "constant symplectic pi on R^4 with constant sigma = dx1^dx2^dx3",
                                    4, {{0, 1, {0, 0, 0, 0}, 1.0}, {2, 3, {0, 0, 0, 0}, 1.0}}, true);
        Tensor3 s0(4);
        // antisymmetrization of dx1 ^ dx2 ^ dx3
        const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
        const double signs[6] = {1, 1, 1, -1, -1, -1};
        for (int p = 0; p < 6; ++p) s0(perms[p][0], perms[p][1], perms[p][2]) = signs[p];
        e.sigma = ThreeForm::constant(e.pi.chart(), s0);
        const BivectorField pi = e.pi;
        e.closed_form_omega = [pi](const Vec& xi) {
            Mat out = canonical_form_matrix(4);
            out.bottomRightCorner(4, 4) = pi.components(Vec(xi.head(4)));
            return out;
        };
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const CatalogEntry& e : catalog())
        if (e.name == name) return e;
    throw ConfigError("unknown catalog entry: " + name);
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const CatalogEntry& e : catalog()) names.push_back(e.name);
    return names;
}

}  // namespace srt
