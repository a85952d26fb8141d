#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "srt/report.hpp"

using namespace srt;

namespace {

RunConfig small_config(const std::string& builtin, int count = 6) {
    RunConfig cfg;
    cfg.builtin = builtin;
    cfg.samples.count = count;
    cfg.samples.seed = 42;
    return cfg;
}

}  // namespace

TEST_CASE("check names round-trip") {
    for (const CheckKind k : {CheckKind::Jacobi, CheckKind::SprayAxioms, CheckKind::ZeroSection,
                              CheckKind::Realization, CheckKind::Orthogonality, CheckKind::BoundaryFormula,
                              CheckKind::Closedness, CheckKind::Radius, CheckKind::Twisted}) {
        const auto parsed = parse_check(check_name(k));
        REQUIRE(static_cast<bool>(parsed));
        CHECK(*parsed == k);
    }
    CHECK_FALSE(parse_check("bogus"));
}

TEST_CASE("config JSON parsing") {
    const auto j = nlohmann::json::parse(R"({
        "poisson": {"polynomial": {"dim": 2, "terms": [
            {"i": 1, "j": 2, "exponents": [0, 0], "coefficient": 1.0},
            {"i": 1, "j": 2, "exponents": [2, 0], "coefficient": 1.0}
        ]}},
        "integrator": {"method": "rk4-fixed", "steps": 100},
        "samples": {"count": 4, "y_radius": 0.05, "seed": 7},
        "checks": ["jacobi", "realization"]
    })");
    const RunConfig cfg = RunConfig::from_json(j);
    REQUIRE(static_cast<bool>(cfg.polynomial));
    CHECK(cfg.polynomial->dim() == 2);
    // 1-based file indices map to the (0,1) entry
    const Vec x = (Vec(2) << 0.5, 0.0).finished();
    CHECK(cfg.polynomial->components(x)(0, 1) == doctest::Approx(1.25));
    CHECK(cfg.integrator.steps == 100);
    CHECK(cfg.samples.count == 4);
    CHECK(cfg.samples.seed == 7);
    REQUIRE(cfg.checks.size() == 2);
    CHECK(cfg.checks[0] == CheckKind::Jacobi);

    cfg.validate();
    const VerificationReport report = run(cfg);
    CHECK(report.all_ok());
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"poisson": {}})")), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"checks": ["bogus"]})")), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(R"({"expect": "poisson"})")), ConfigError);
    CHECK_THROWS_AS(
        RunConfig::from_json(nlohmann::json::parse(R"({"samples": {"count": 3}})")),
        ConfigError);  // seed required

    RunConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);  // no bivector
    cfg.builtin = "so3-star";
    cfg.integrator.steps = 2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config("unknown-entry");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("verify runs are deterministic and thread-count independent") {
    const RunConfig cfg = small_config("sl2-star", 8);
    const std::string a = run(cfg).to_text();
    const std::string b = run(cfg).to_text();
    CHECK(a == b);

    setenv("SRT_THREADS", "4", 1);
    const std::string c = run(cfg).to_text();
    unsetenv("SRT_THREADS");
    CHECK(a == c);
}

TEST_CASE("different seeds give different samples, same format") {
    RunConfig cfg = small_config("so3-star", 4);
    cfg.checks = {CheckKind::Realization};
    const std::string a = run(cfg).to_text();
    cfg.samples.seed = 43;
    const std::string b = run(cfg).to_text();
    CHECK(a != b);
}

TEST_CASE("exit codes and expected-failure inversion") {
    RunConfig good = small_config("so3-star", 4);
    const VerificationReport pass_report = run(good);
    CHECK(pass_report.all_ok());
    CHECK(report_exit_code(pass_report) == 0);

    RunConfig bad = small_config("non-poisson-witness", 4);
    const VerificationReport fail_report = run(bad);
    CHECK_FALSE(fail_report.all_ok());
    CHECK(report_exit_code(fail_report) == 2);

    bad.expect_non_poisson = true;
    const VerificationReport inverted = run(bad);
    CHECK(inverted.all_ok());
    CHECK(report_exit_code(inverted) == 0);
    bool saw_inverted = false;
    for (const CheckSummary& s : inverted.summaries)
        if (s.inverted) saw_inverted = true;
    CHECK(saw_inverted);
}

TEST_CASE("report text round-trips through parse_text") {
    RunConfig cfg = small_config("quadratic", 5);
    const VerificationReport report = run(cfg);
    const VerificationReport back = VerificationReport::parse_text(report.to_text());
    REQUIRE(back.records.size() == report.records.size());
    for (size_t k = 0; k < report.records.size(); ++k) {
        CHECK(back.records[k].check == report.records[k].check);
        CHECK(back.records[k].sample_id == report.records[k].sample_id);
        CHECK(back.records[k].defect == report.records[k].defect);
        CHECK(back.records[k].pass == report.records[k].pass);
    }
    REQUIRE(back.summaries.size() == report.summaries.size());
    CHECK(back.all_ok() == report.all_ok());
    CHECK(back.metadata.at("version") == "1.0");
}

TEST_CASE("export formats") {
    RunConfig cfg = small_config("so3-star", 6);
    const VerificationReport report = run(cfg);

    const std::string hist = export_plot_data(report, "defect-histogram");
    CHECK(hist.rfind("check\tbin\tlo\thi\tcount\n", 0) == 0);

    const std::string radius = export_plot_data(report, "radius-vs-point");
    CHECK(radius.rfind("sample\tradius\tpoint\n", 0) == 0);
    CHECK(radius.find("\n0\t") != std::string::npos);

    const std::string heat = export_plot_data(report, "omega-heatmap");
    CHECK(heat.rfind("row\tcol\tvalue\n", 0) == 0);
    // 6x6 omega for a 3-dimensional base
    CHECK(std::count(heat.begin(), heat.end(), '\n') == 1 + 36);

    CHECK_THROWS_AS(export_plot_data(report, "pie-chart"), ConfigError);
}

TEST_CASE("twisted check only runs when a sigma is available") {
    const VerificationReport with = run(small_config("twisted-demo", 3));
    bool twisted_present = false;
    for (const CheckSummary& s : with.summaries)
        if (s.check == "twisted") twisted_present = true;
    CHECK(twisted_present);

    const VerificationReport without = run(small_config("so3-star", 3));
    for (const CheckSummary& s : without.summaries) CHECK(s.check != "twisted");
}

TEST_CASE("canonical config echo lands in metadata") {
    const VerificationReport report = run(small_config("heisenberg", 3));
    const std::string& echo = report.metadata.at("config");
    CHECK(echo.find("\"poisson\":\"heisenberg\"") != std::string::npos);
    CHECK(report.metadata.count("convention.chi_boundary_scale") == 1);
}
