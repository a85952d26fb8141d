#include "srt/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "srt/rng.hpp"

namespace srt {

namespace {

const std::vector<std::pair<CheckKind, const char*>> kCheckNames = {
    {CheckKind::Jacobi, "jacobi"},
    {CheckKind::SprayAxioms, "spray-axioms"},
    {CheckKind::ZeroSection, "zero-section"},
    {CheckKind::Realization, "realization"},
    {CheckKind::Orthogonality, "orthogonality"},
    {CheckKind::BoundaryFormula, "boundary-formula"},
    {CheckKind::Closedness, "closedness"},
    {CheckKind::Radius, "radius"},
    {CheckKind::Twisted, "twisted"},
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_vec(const Vec& v) {
    std::string out = "(";
    for (int i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(v[i]);
    }
    return out + ")";
}

int thread_count() {
    if (const char* env = std::getenv("SRT_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

/// Deterministic slot-based parallel map: results land in index order no
/// matter how work is scheduled.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    const int threads = std::min(thread_count(), count > 0 ? count : 1);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::string check_name(CheckKind kind) {
    for (const auto& [k, name] : kCheckNames)
        if (k == kind) return name;
    throw ConfigError("unknown check kind");
}

std::optional<CheckKind> parse_check(const std::string& name) {
    for (const auto& [k, n] : kCheckNames)
        if (name == n) return k;
    return std::nullopt;
}

double check_tolerance(CheckKind kind) {
    switch (kind) {
        case CheckKind::Jacobi: return 1e-9;
        case CheckKind::SprayAxioms: return 1e-12;
        case CheckKind::ZeroSection: return 1e-10;
        case CheckKind::Realization: return 1e-6;
        case CheckKind::Orthogonality: return 1e-6;
        case CheckKind::BoundaryFormula: return 1e-6;
        case CheckKind::Closedness: return 1e-4;
        case CheckKind::Radius: return 0.0;  // pass when radius > 0
        case CheckKind::Twisted: return 1e-12;
    }
    throw ConfigError("unknown check kind");
}

// Threshold a negative-control check must exceed to count as the expected
// failure.
static double inverted_threshold(CheckKind kind) { return 1e-3; }

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    try {
        if (j.contains("poisson")) {
            const auto& p = j.at("poisson");
            if (p.contains("builtin")) {
                cfg.builtin = p.at("builtin").get<std::string>();
            } else if (p.contains("polynomial")) {
                const auto& poly = p.at("polynomial");
                const int dim = poly.at("dim").get<int>();
                cfg.polynomial_domain_radius = poly.value("domain_radius", 4.0);
                std::vector<PolyTerm> terms;
                for (const auto& t : poly.at("terms")) {
                    PolyTerm term;
                    term.i = t.at("i").get<int>() - 1;  // file format is 1-based
                    term.j = t.at("j").get<int>() - 1;
                    term.exponents = t.at("exponents").get<std::vector<int>>();
                    term.coeff = t.at("coefficient").get<double>();
                    terms.push_back(std::move(term));
                }
                cfg.polynomial = PolyBivector(dim, terms);
            } else {
                throw ConfigError("config.poisson: expected 'builtin' or 'polynomial'");
            }
        }
        if (j.contains("spray")) {
            const auto& s = j.at("spray");
            const std::string kind = s.value("kind", "basic");
            if (kind == "basic") {
                cfg.spray.kind = SpraySpec::Kind::Basic;
            } else if (kind == "geodesic") {
                cfg.spray.kind = SpraySpec::Kind::Geodesic;
                cfg.spray.metric = s.value("metric", "identity");
            } else {
                throw ConfigError("config.spray.kind: expected basic or geodesic");
            }
        }
        if (j.contains("integrator")) {
            const auto& it = j.at("integrator");
            const std::string method = it.value("method", "rk4-fixed");
            if (method == "rk4-fixed") {
                cfg.integrator.method = IntegratorConfig::Method::Rk4Fixed;
            } else if (method == "rk45-adaptive") {
                cfg.integrator.method = IntegratorConfig::Method::Rk45Adaptive;
            } else {
                throw ConfigError("config.integrator.method: expected rk4-fixed or rk45-adaptive");
            }
            cfg.integrator.steps = it.value("steps", 200);
            cfg.integrator.rel_tol = it.value("rel_tol", 1e-10);
            cfg.integrator.abs_tol = it.value("abs_tol", 1e-12);
            cfg.integrator.escape_norm = it.value("escape_norm", 10.0);
        }
        if (j.contains("samples")) {
            const auto& s = j.at("samples");
            cfg.samples.count = s.value("count", 100);
            cfg.samples.y_radius = s.value("y_radius", 0.1);
            cfg.samples.x_radius = s.value("x_radius", 0.0);
            if (!s.contains("seed") && cfg.samples.count > 0)
                throw ConfigError("config.samples.seed: required when count > 0");
            cfg.samples.seed = s.value("seed", uint64_t{42});
        }
        if (j.contains("checks")) {
            for (const auto& c : j.at("checks")) {
                const auto kind = parse_check(c.get<std::string>());
                if (!kind) throw ConfigError("config.checks: unknown check '" + c.get<std::string>() + "'");
                cfg.checks.push_back(*kind);
            }
        }
        if (j.contains("expect")) {
            const std::string e = j.at("expect").get<std::string>();
            if (e == "non-poisson") {
                cfg.expect_non_poisson = true;
            } else {
                throw ConfigError("config.expect: only 'non-poisson' is recognized");
            }
        }
        if (j.contains("sigma")) {
            const auto& s = j.at("sigma").at("constant");
            const int dim = s.at("dim").get<int>();
            Tensor3 s0(dim);
            for (const auto& e : s.at("entries")) {
                const int i = e.at("i").get<int>() - 1;
                const int jj = e.at("j").get<int>() - 1;
                const int k = e.at("k").get<int>() - 1;
                const double v = e.at("value").get<double>();
                // complete the full antisymmetrization from one representative
                s0(i, jj, k) = v;
                s0(jj, k, i) = v;
                s0(k, i, jj) = v;
                s0(jj, i, k) = -v;
                s0(i, k, jj) = -v;
                s0(k, jj, i) = -v;
            }
            cfg.sigma = ThreeForm::constant(Chart(dim, cfg.polynomial_domain_radius), s0);
        }
        if (j.contains("output")) cfg.output_path = j.at("output").value("path", "");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json checks_j = nlohmann::ordered_json::array();
    for (const CheckKind c : checks) checks_j.push_back(check_name(c));
    j["checks"] = checks_j;
    j["expect"] = expect_non_poisson ? "non-poisson" : "";
    j["integrator"] = {
        {"method", integrator.method == IntegratorConfig::Method::Rk4Fixed ? "rk4-fixed" : "rk45-adaptive"},
        {"steps", integrator.steps},
        {"escape_norm", integrator.escape_norm},
    };
    j["output"] = output_path;
    j["poisson"] = builtin.empty() ? std::string("polynomial") : builtin;
    j["samples"] = {
        {"count", samples.count},
        {"y_radius", samples.y_radius},
        {"x_radius", samples.x_radius},
        {"seed", samples.seed},
    };
    j["sigma"] = sigma ? "constant" : "none";
    j["spray"] = spray.kind == SpraySpec::Kind::Basic ? "basic" : ("geodesic:" + spray.metric);
    return j;
}

void RunConfig::validate() const {
    if (builtin.empty() && !polynomial) throw ConfigError("config.poisson: no bivector specified");
    if (!builtin.empty()) catalog_entry(builtin);  // throws on unknown names
    integrator.validate();
    if (samples.count < 0) throw ConfigError("config.samples.count: must be >= 0");
    if (!(samples.y_radius > 0.0)) throw ConfigError("config.samples.y_radius: must be > 0");
}

bool VerificationReport::all_ok() const {
    for (const CheckSummary& s : summaries)
        if (!s.ok) return false;
    return true;
}

namespace {

struct RunContext {
    BivectorField pi;
    SprayField spray;
    std::optional<ThreeForm> sigma;
    double x_radius = 0.0;
};

uint64_t check_seed(const SampleSpec& samples, CheckKind kind) {
    return samples.seed * 1000003ULL + static_cast<uint64_t>(kind) + 1;
}

std::vector<Vec> sample_xis(const Chart& chart, const SampleSpec& samples, double x_radius, CheckKind kind,
                            int count) {
    SampleGen gen(check_seed(samples, kind));
    std::vector<Vec> out;
    for (int k = 0; k < count; ++k) {
        Vec xi(2 * chart.dim);
        xi.head(chart.dim) = gen.ball_point(chart.dim, x_radius);
        xi.tail(chart.dim) = gen.ball_point(chart.dim, samples.y_radius);
        out.push_back(xi);
    }
    return out;
}

std::vector<CheckRecord> run_check(CheckKind kind, const RunConfig& cfg, const RunContext& ctx,
                                   std::map<std::string, std::string>& metadata) {
    const Chart& chart = ctx.pi.chart();
    const int n = chart.dim;
    const double tol = check_tolerance(kind);
    const std::string name = check_name(kind);
    const int count = cfg.samples.count;

    auto make_records = [&](int m) {
        std::vector<CheckRecord> records(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
            records[static_cast<size_t>(i)].check = name;
            records[static_cast<size_t>(i)].sample_id = i;
            records[static_cast<size_t>(i)].tol = tol;
        }
        return records;
    };
    auto guard = [&](CheckRecord& rec, auto&& body) {
        try {
            body();
            rec.pass = rec.defect <= rec.tol || (kind == CheckKind::Radius && rec.defect > 0.0);
        } catch (const std::exception& e) {
            rec.pass = false;
            rec.note = e.what();
        }
    };

    switch (kind) {
        case CheckKind::Jacobi: {
            SampleGen gen(check_seed(cfg.samples, kind));
            std::vector<Vec> xs;
            for (int i = 0; i < count; ++i) xs.push_back(gen.ball_point(n, ctx.x_radius));
            auto records = make_records(count);
            parallel_for(count, [&](int i) {
                guard(records[static_cast<size_t>(i)],
                      [&] { records[static_cast<size_t>(i)].defect = jacobiator(ctx.pi, xs[static_cast<size_t>(i)]).max_abs(); });
            });
            return records;
        }
        case CheckKind::SprayAxioms: {
            const auto samples =
                spray_samples(chart, count, ctx.x_radius, cfg.samples.y_radius, check_seed(cfg.samples, kind));
            auto records = make_records(count);
            parallel_for(count, [&](int i) {
                guard(records[static_cast<size_t>(i)], [&] {
                    const std::vector<Vec> one = {samples[static_cast<size_t>(i)]};
                    const double a1 = check_spray_axiom1(ctx.spray, one).max_defect;
                    const double h = check_spray_homogeneity(ctx.spray, one, {0.5, 2.0, 10.0}).max_defect;
                    records[static_cast<size_t>(i)].defect = std::max(a1, h);
                });
            });
            return records;
        }
        case CheckKind::ZeroSection: {
            const int m = std::min(count, 10);
            SampleGen gen(check_seed(cfg.samples, kind));
            std::vector<Vec> xs;
            for (int i = 0; i < m; ++i) xs.push_back(gen.ball_point(n, ctx.x_radius));
            auto records = make_records(m);
            parallel_for(m, [&](int i) {
                guard(records[static_cast<size_t>(i)], [&] {
                    Vec xi = Vec::Zero(2 * n);
                    xi.head(n) = xs[static_cast<size_t>(i)];
                    const RealizationSample s = omega_at(ctx.pi, ctx.spray, xi, cfg.integrator);
                    if (s.status != FlowStatus::Complete) throw DomainError("escaped");
                    records[static_cast<size_t>(i)].defect =
                        max_abs(Mat(s.omega - zero_section_formula(ctx.pi, xs[static_cast<size_t>(i)])));
                });
            });
            return records;
        }
        case CheckKind::Realization: {
            const auto xis = sample_xis(chart, cfg.samples, ctx.x_radius, kind, count);
            auto records = make_records(count);
            parallel_for(count, [&](int i) {
                guard(records[static_cast<size_t>(i)], [&] {
                    const RealizationSample s = omega_at(ctx.pi, ctx.spray, xis[static_cast<size_t>(i)], cfg.integrator);
                    if (s.status != FlowStatus::Complete) {
                        records[static_cast<size_t>(i)].note = "escaped at t=" + fmt_double(s.escape_time);
                        throw DomainError("escaped");
                    }
                    if (!s.nondegenerate) throw NumericError("omega degenerate");
                    records[static_cast<size_t>(i)].defect = s.poisson_defect;
                    if (i == 0) {
                        for (int r = 0; r < 2 * n; ++r)
                            for (int c = 0; c < 2 * n; ++c)
                                metadata["omega." + std::to_string(r) + "." + std::to_string(c)] =
                                    fmt_double(s.omega(r, c));
                    }
                });
            });
            return records;
        }
        case CheckKind::Orthogonality: {
            const auto xis = sample_xis(chart, cfg.samples, ctx.x_radius, kind, count);
            auto records = make_records(count);
            parallel_for(count, [&](int i) {
                guard(records[static_cast<size_t>(i)], [&] {
                    records[static_cast<size_t>(i)].defect =
                        orthogonality_defect(ctx.pi, ctx.spray, xis[static_cast<size_t>(i)], cfg.integrator);
                });
            });
            return records;
        }
        case CheckKind::BoundaryFormula: {
            const int m = std::min(count, 50);
            SampleGen gen(check_seed(cfg.samples, kind));
            std::vector<Vec> xis, v0s, w0s;
            for (int i = 0; i < m; ++i) {
                Vec xi(2 * n);
                xi.head(n) = gen.ball_point(n, ctx.x_radius);
                xi.tail(n) = gen.ball_point(n, cfg.samples.y_radius);
                xis.push_back(xi);
                v0s.push_back(gen.unit_vector(2 * n));
                w0s.push_back(gen.unit_vector(2 * n));
            }
            auto records = make_records(m);
            parallel_for(m, [&](int i) {
                auto& rec = records[static_cast<size_t>(i)];
                try {
                    if (cfg.expect_non_poisson) {
                        const GeneralBoundaryResult r = boundary_formula_defect_general(
                            ctx.pi, ctx.spray, xis[static_cast<size_t>(i)], v0s[static_cast<size_t>(i)],
                            w0s[static_cast<size_t>(i)], cfg.integrator);
                        rec.defect = std::abs(r.defect);
                        rec.note = "chi_mismatch=" + fmt_double(r.mismatch);
                        // expected failure mode: defect explained by the chi integral
                        rec.pass = r.mismatch <= 1e-5;
                    } else {
                        const BoundaryFormulaResult r =
                            boundary_formula(ctx.pi, ctx.spray, xis[static_cast<size_t>(i)],
                                             v0s[static_cast<size_t>(i)], w0s[static_cast<size_t>(i)], cfg.integrator);
                        rec.defect = r.defect;
                        rec.pass = rec.defect <= rec.tol;
                    }
                } catch (const std::exception& e) {
                    rec.pass = false;
                    rec.note = e.what();
                }
            });
            return records;
        }
        case CheckKind::Closedness: {
            const auto xis = sample_xis(chart, cfg.samples, ctx.x_radius, kind, std::min(count, 10));
            auto records = make_records(static_cast<int>(xis.size()));
            parallel_for(static_cast<int>(xis.size()), [&](int i) {
                guard(records[static_cast<size_t>(i)], [&] {
                    records[static_cast<size_t>(i)].defect =
                        closedness_check(ctx.pi, ctx.spray, xis[static_cast<size_t>(i)], cfg.integrator, 1e-3);
                });
            });
            return records;
        }
        case CheckKind::Radius: {
            const int m = std::min(count, 5);
            SampleGen gen(check_seed(cfg.samples, kind));
            std::vector<Vec> xs;
            for (int i = 0; i < m; ++i) xs.push_back(gen.ball_point(n, ctx.x_radius));
            auto records = make_records(m);
            const double eps_max = std::min(1.0, 0.25 * chart.domain_radius);
            parallel_for(m, [&](int i) {
                guard(records[static_cast<size_t>(i)], [&] {
                    const double radius =
                        nondegeneracy_radius(ctx.pi, ctx.spray, xs[static_cast<size_t>(i)], cfg.integrator, 4 * n * n,
                                             1e-6, eps_max, check_seed(cfg.samples, kind) + 7);
                    records[static_cast<size_t>(i)].defect = radius;
                    records[static_cast<size_t>(i)].note = "x=" + fmt_vec(xs[static_cast<size_t>(i)]);
                });
            });
            return records;
        }
        case CheckKind::Twisted: {
            if (!ctx.sigma) throw ConfigError("twisted check requested but no sigma available");
            const auto xis = sample_xis(chart, cfg.samples, ctx.x_radius, kind, std::min(count, 10));
            auto records = make_records(static_cast<int>(xis.size()));
            parallel_for(static_cast<int>(xis.size()), [&](int i) {
                guard(records[static_cast<size_t>(i)], [&] {
                    const Mat m_sigma =
                        twisted_omega_at(ctx.pi, *ctx.sigma, ctx.spray, xis[static_cast<size_t>(i)], cfg.integrator);
                    const RealizationSample s = omega_at(ctx.pi, ctx.spray, xis[static_cast<size_t>(i)], cfg.integrator);
                    const double antisym = max_abs(Mat(m_sigma + m_sigma.transpose()));
                    const double det = (s.omega + m_sigma).determinant();
                    if (std::abs(det) < 1e-6) throw NumericError("twisted form degenerate");
                    records[static_cast<size_t>(i)].defect = antisym;
                });
            });
            return records;
        }
    }
    throw ConfigError("unknown check kind");
}

}  // namespace

VerificationReport run(const RunConfig& cfg) {
    cfg.validate();

    RunContext ctx;
    if (!cfg.builtin.empty()) {
        const CatalogEntry& entry = catalog_entry(cfg.builtin);
        ctx.pi = entry.pi;
        ctx.sigma = cfg.sigma ? cfg.sigma : entry.sigma;
    } else {
        ctx.pi = cfg.polynomial->field(cfg.polynomial_domain_radius);
        ctx.sigma = cfg.sigma;
    }
    if (cfg.spray.kind == SpraySpec::Kind::Basic) {
        ctx.spray = basic_spray(ctx.pi);
    } else {
        if (cfg.spray.metric != "identity")
            throw ConfigError("config.spray.metric: only 'identity' is supported");
        const CotangentMetric metric = CotangentMetric::identity(ctx.pi.chart());
        ctx.spray = geodesic_spray(ctx.pi, levi_civita_contravariant(metric, ctx.pi));
    }
    ctx.x_radius = cfg.samples.x_radius > 0.0 ? cfg.samples.x_radius : 0.25 * ctx.pi.chart().domain_radius;
    if (cfg.samples.y_radius >= ctx.pi.chart().domain_radius)
        throw ConfigError("config.samples.y_radius: must be below the domain radius");

    std::vector<CheckKind> checks = cfg.checks;
    if (checks.empty()) {
        for (const auto& [kind, name] : kCheckNames) {
            if (kind == CheckKind::Twisted && !ctx.sigma) continue;
            checks.push_back(kind);
        }
    }

    VerificationReport report;
    report.metadata["config"] = RunConfig(cfg).to_json().dump();
    report.metadata["version"] = "1.0";
    report.metadata["convention.chi_identification"] = "chi_pi = 2*J; defect contractions are expressed in J";
    report.metadata["convention.chi_eq4_scale"] = fmt_double(kChiEq4Scale);
    report.metadata["convention.chi_boundary_scale"] = fmt_double(kChiBoundaryScale);
    report.metadata["rng"] = "splitmix64/box-muller (docs/conventions.md)";

    for (const CheckKind kind : checks) {
        auto records = run_check(kind, cfg, ctx, report.metadata);
        CheckSummary summary;
        summary.check = check_name(kind);
        summary.total = static_cast<int>(records.size());
        for (const CheckRecord& r : records) {
            summary.max_defect = std::max(summary.max_defect, r.defect);
            if (r.pass) ++summary.pass_count;
        }
        const bool inverted = cfg.expect_non_poisson &&
                              (kind == CheckKind::Jacobi || kind == CheckKind::Realization ||
                               kind == CheckKind::Orthogonality);
        summary.inverted = inverted;
        if (inverted) {
            // negative control: the check is expected to fail decisively
            summary.ok = summary.max_defect > inverted_threshold(kind);
        } else {
            summary.ok = summary.pass_count == summary.total;
        }
        report.summaries.push_back(summary);
        for (CheckRecord& r : records) report.records.push_back(std::move(r));
    }

    std::stable_sort(report.records.begin(), report.records.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return a.check != b.check ? a.check < b.check : a.sample_id < b.sample_id;
    });
    std::stable_sort(report.summaries.begin(), report.summaries.end(),
                     [](const CheckSummary& a, const CheckSummary& b) { return a.check < b.check; });
    return report;
}

int report_exit_code(const VerificationReport& report) { return report.all_ok() ? 0 : 2; }

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    out << "# srt verification report\n";
    out << "format = 1\n";
    for (const auto& [key, value] : metadata) out << "meta." << key << " = " << value << "\n";
    for (const CheckRecord& r : records) {
        char id[8];
        std::snprintf(id, sizeof(id), "%03d", r.sample_id);
        const std::string prefix = "record." + r.check + "." + id + ".";
        out << prefix << "defect = " << fmt_double(r.defect) << "\n";
        out << prefix << "tol = " << fmt_double(r.tol) << "\n";
        out << prefix << "pass = " << (r.pass ? "true" : "false") << "\n";
        if (!r.note.empty()) out << prefix << "note = " << r.note << "\n";
    }
    for (const CheckSummary& s : summaries) {
        const std::string prefix = "summary." + s.check + ".";
        out << prefix << "max_defect = " << fmt_double(s.max_defect) << "\n";
        out << prefix << "pass = " << s.pass_count << "/" << s.total << "\n";
        if (s.inverted) out << prefix << "inverted = true\n";
        out << prefix << "ok = " << (s.ok ? "true" : "false") << "\n";
    }
    bool ok = all_ok();
    out << "overall.ok = " << (ok ? "true" : "false") << "\n";
    return out.str();
}

VerificationReport VerificationReport::parse_text(const std::string& text) {
    VerificationReport report;
    std::istringstream in(text);
    std::string line;
    std::map<std::string, CheckRecord> records;
    std::map<std::string, CheckSummary> summaries;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 3);
        if (key.rfind("meta.", 0) == 0) {
            report.metadata[key.substr(5)] = value;
        } else if (key.rfind("record.", 0) == 0) {
            const size_t last_dot = key.rfind('.');
            const std::string field = key.substr(last_dot + 1);
            const std::string id_key = key.substr(7, last_dot - 7);  // "<check>.<id>"
            CheckRecord& rec = records[id_key];
            const size_t dot = id_key.rfind('.');
            rec.check = id_key.substr(0, dot);
            rec.sample_id = std::atoi(id_key.substr(dot + 1).c_str());
            if (field == "defect") rec.defect = std::atof(value.c_str());
            if (field == "tol") rec.tol = std::atof(value.c_str());
            if (field == "pass") rec.pass = value == "true";
            if (field == "note") rec.note = value;
        } else if (key.rfind("summary.", 0) == 0) {
            const size_t last_dot = key.rfind('.');
            const std::string field = key.substr(last_dot + 1);
            const std::string check = key.substr(8, last_dot - 8);
            CheckSummary& s = summaries[check];
            s.check = check;
            if (field == "max_defect") s.max_defect = std::atof(value.c_str());
            if (field == "ok") s.ok = value == "true";
            if (field == "inverted") s.inverted = value == "true";
            if (field == "pass") {
                std::sscanf(value.c_str(), "%d/%d", &s.pass_count, &s.total);
            }
        }
    }
    for (auto& [key, rec] : records) report.records.push_back(std::move(rec));
    for (auto& [key, s] : summaries) report.summaries.push_back(std::move(s));
    std::stable_sort(report.records.begin(), report.records.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return a.check != b.check ? a.check < b.check : a.sample_id < b.sample_id;
    });
    return report;
}

std::string export_plot_data(const VerificationReport& report, const std::string& kind) {
    std::ostringstream out;
    if (kind == "defect-histogram") {
        out << "check\tbin\tlo\thi\tcount\n";
        for (const CheckSummary& s : report.summaries) {
            const int bins = 20;
            const double hi = s.max_defect > 0.0 ? s.max_defect : 1.0;
            std::vector<int> counts(bins, 0);
            for (const CheckRecord& r : report.records) {
                if (r.check != s.check) continue;
                int b = static_cast<int>(r.defect / hi * bins);
                b = std::clamp(b, 0, bins - 1);
                ++counts[static_cast<size_t>(b)];
            }
            for (int b = 0; b < bins; ++b)
                out << s.check << "\t" << b << "\t" << fmt_double(b * hi / bins) << "\t"
                    << fmt_double((b + 1) * hi / bins) << "\t" << counts[static_cast<size_t>(b)] << "\n";
        }
        return out.str();
    }
    if (kind == "radius-vs-point") {
        out << "sample\tradius\tpoint\n";
        for (const CheckRecord& r : report.records)
            if (r.check == "radius") out << r.sample_id << "\t" << fmt_double(r.defect) << "\t" << r.note << "\n";
        return out.str();
    }
    if (kind == "omega-heatmap") {
        out << "row\tcol\tvalue\n";
        for (const auto& [key, value] : report.metadata) {
            if (key.rfind("omega.", 0) != 0) continue;
            const size_t dot = key.find('.', 6);
            out << key.substr(6, dot - 6) << "\t" << key.substr(dot + 1) << "\t" << value << "\n";
        }
        return out.str();
    }
    throw ConfigError("export: unknown kind '" + kind + "'");
}

}  // namespace srt
