// srt: numerical symplectic-realization toolkit, command line front end.
//
// Verbs:
//   list-examples              print the built-in catalog
//   check-jacobi               jacobiator sweep only
//   realize                    single-point realization diagnostics
//   radius                     nondegeneracy radius sweep
//   verify                     full check battery -> verification report
//   export                     re-render a saved report as plot data
//
// Exit codes: 0 success, 2 verification failure, 3 configuration error,
// 4 numerical failure (escape / degeneracy outside a verification run).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "srt/report.hpp"

namespace {

struct CommonFlags {
    std::string builtin;
    std::string config_path;
    std::string spray = "";
    std::string metric = "";
    std::string method = "";
    int steps = -1;
    int count = -1;
    double y_radius = -1.0;
    double x_radius = -1.0;
    int64_t seed = -1;
    std::vector<std::string> checks;
    bool expect_non_poisson = false;
    std::string output;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_checks) {
    cmd->add_option("--builtin", f.builtin, "Catalog entry name");
    cmd->add_option("--config", f.config_path, "JSON config file (flags override)");
    cmd->add_option("--spray", f.spray, "Spray kind: basic | geodesic");
    cmd->add_option("--metric", f.metric, "Cotangent metric for geodesic sprays");
    cmd->add_option("--method", f.method, "Integrator: rk4-fixed | rk45-adaptive");
    cmd->add_option("--steps", f.steps, "Fixed-step count");
    cmd->add_option("--samples", f.count, "Sample count");
    cmd->add_option("--y-radius", f.y_radius, "Covector sampling radius");
    cmd->add_option("--x-radius", f.x_radius, "Base-point sampling radius");
    cmd->add_option("--seed", f.seed, "Sampling seed");
    cmd->add_option("--output", f.output, "Write the report here instead of stdout");
    if (with_checks) {
        cmd->add_option("--check", f.checks, "Restrict to these checks (repeatable)");
        cmd->add_flag("--expect-non-poisson", f.expect_non_poisson,
                      "Treat Jacobi/realization failures as the expected outcome");
    }
}

srt::RunConfig build_config(const CommonFlags& f) {
    srt::RunConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw srt::ConfigError("cannot open config file: " + f.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw srt::ConfigError(std::string("config parse: ") + e.what());
        }
        cfg = srt::RunConfig::from_json(j);
    }
    if (!f.builtin.empty()) cfg.builtin = f.builtin;
    if (!f.spray.empty()) {
        if (f.spray == "basic") {
            cfg.spray.kind = srt::SpraySpec::Kind::Basic;
        } else if (f.spray == "geodesic") {
            cfg.spray.kind = srt::SpraySpec::Kind::Geodesic;
        } else {
            throw srt::ConfigError("--spray: expected basic or geodesic");
        }
    }
    if (!f.metric.empty()) cfg.spray.metric = f.metric;
    if (!f.method.empty()) {
        if (f.method == "rk4-fixed") {
            cfg.integrator.method = srt::IntegratorConfig::Method::Rk4Fixed;
        } else if (f.method == "rk45-adaptive") {
            cfg.integrator.method = srt::IntegratorConfig::Method::Rk45Adaptive;
        } else {
            throw srt::ConfigError("--method: expected rk4-fixed or rk45-adaptive");
        }
    }
    if (f.steps >= 0) cfg.integrator.steps = f.steps;
    if (f.count >= 0) cfg.samples.count = f.count;
    if (f.y_radius >= 0.0) cfg.samples.y_radius = f.y_radius;
    if (f.x_radius >= 0.0) cfg.samples.x_radius = f.x_radius;
    if (f.seed >= 0) cfg.samples.seed = static_cast<uint64_t>(f.seed);
    for (const std::string& name : f.checks) {
        const auto kind = srt::parse_check(name);
        if (!kind) throw srt::ConfigError("--check: unknown check '" + name + "'");
        cfg.checks.push_back(*kind);
    }
    if (f.expect_non_poisson) cfg.expect_non_poisson = true;
    if (!f.output.empty()) cfg.output_path = f.output;
    if (cfg.builtin.empty() && !cfg.polynomial) {
        // sensible default so bare verbs work out of the box
        cfg.builtin = "so3-star";
    }
    return cfg;
}

int emit(const srt::VerificationReport& report, const std::string& output_path) {
    const std::string text = report.to_text();
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path);
        if (!out) throw srt::ConfigError("cannot open output file: " + output_path);
        out << text;
    }
    return srt::report_exit_code(report);
}

int run_with_checks(const CommonFlags& flags, std::vector<srt::CheckKind> forced) {
    srt::RunConfig cfg = build_config(flags);
    if (!forced.empty()) cfg.checks = std::move(forced);
    const srt::VerificationReport report = srt::run(cfg);
    return emit(report, cfg.output_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"srt: symplectic realization toolkit"};
    app.require_subcommand(1);

    CLI::App* list_cmd = app.add_subcommand("list-examples", "Print the built-in catalog");

    CommonFlags jacobi_flags;
    CLI::App* jacobi_cmd = app.add_subcommand("check-jacobi", "Jacobiator sweep");
    add_common(jacobi_cmd, jacobi_flags, false);

    CommonFlags realize_flags;
    CLI::App* realize_cmd = app.add_subcommand("realize", "Realization diagnostics");
    add_common(realize_cmd, realize_flags, false);

    CommonFlags radius_flags;
    CLI::App* radius_cmd = app.add_subcommand("radius", "Nondegeneracy radius sweep");
    add_common(radius_cmd, radius_flags, false);

    CommonFlags verify_flags;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Full verification battery");
    add_common(verify_cmd, verify_flags, true);

    std::string export_input, export_kind, export_output;
    CLI::App* export_cmd = app.add_subcommand("export", "Render a saved report as plot data");
    export_cmd->add_option("--input", export_input, "Saved report file")->required();
    export_cmd->add_option("--kind", export_kind,
                           "defect-histogram | radius-vs-point | omega-heatmap")->required();
    export_cmd->add_option("--output", export_output, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const srt::CatalogEntry& e : srt::catalog()) {
                std::cout << e.name << "\tdim=" << e.pi.chart().dim << "\t"
                          << (e.is_poisson ? "poisson" : "non-poisson") << "\t" << e.description << "\n";
            }
            return 0;
        }
        if (jacobi_cmd->parsed()) return run_with_checks(jacobi_flags, {srt::CheckKind::Jacobi});
        if (realize_cmd->parsed())
            return run_with_checks(realize_flags,
                                   {srt::CheckKind::Realization, srt::CheckKind::ZeroSection,
                                    srt::CheckKind::Orthogonality});
        if (radius_cmd->parsed()) return run_with_checks(radius_flags, {srt::CheckKind::Radius});
        if (verify_cmd->parsed()) return run_with_checks(verify_flags, {});
        if (export_cmd->parsed()) {
            std::ifstream in(export_input);
            if (!in) throw srt::ConfigError("cannot open report file: " + export_input);
            std::stringstream buffer;
            buffer << in.rdbuf();
            const auto report = srt::VerificationReport::parse_text(buffer.str());
            const std::string table = srt::export_plot_data(report, export_kind);
            if (export_output.empty()) {
                std::cout << table;
            } else {
                std::ofstream out(export_output);
                if (!out) throw srt::ConfigError("cannot open output file: " + export_output);
                out << table;
            }
            return 0;
        }
    } catch (const srt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const srt::DomainError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const srt::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 3;
}
