#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srt/catalog.hpp"
#include "srt/polynomial.hpp"

namespace srt {

enum class CheckKind {
    Jacobi,
    SprayAxioms,
    ZeroSection,
    Realization,
    Orthogonality,
    BoundaryFormula,
    Closedness,
    Radius,
    Twisted,
};

std::string check_name(CheckKind kind);
std::optional<CheckKind> parse_check(const std::string& name);

/// Per-check defect tolerance, pinned (docs/conventions.md lists them).
double check_tolerance(CheckKind kind);

struct SampleSpec {
    int count = 100;
    double y_radius = 0.1;
    double x_radius = 0.0;  // 0 means 0.25 * domain_radius
    uint64_t seed = 42;
};

struct SpraySpec {
    enum class Kind { Basic, Geodesic };
    Kind kind = Kind::Basic;
    std::string metric = "identity";
};

/// Full batch configuration. A JSON config file may supply everything; CLI
/// flags override field by field. Indices in the polynomial and sigma
/// blocks are 1-based (file format convention).
struct RunConfig {
    std::string builtin;  // catalog entry name; empty when polynomial given
    std::optional<PolyBivector> polynomial;
    double polynomial_domain_radius = 4.0;
    SpraySpec spray;
    IntegratorConfig integrator;
    SampleSpec samples;
    std::vector<CheckKind> checks;  // empty: all applicable
    bool expect_non_poisson = false;
    std::optional<ThreeForm> sigma;
    std::string output_path;  // empty: stdout

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;  // canonical echo for report metadata

    void validate() const;
};

struct CheckRecord {
    std::string check;
    int sample_id = 0;
    double defect = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;
};

struct CheckSummary {
    std::string check;
    double max_defect = 0.0;
    int pass_count = 0;
    int total = 0;
    bool ok = false;        // after expected-failure inversion
    bool inverted = false;  // negative-control check
};

struct VerificationReport {
    std::vector<CheckRecord> records;
    std::vector<CheckSummary> summaries;
    std::map<std::string, std::string> metadata;

    bool all_ok() const;

    /// Byte-stable text serialization: sorted keys, %.17g doubles.
    std::string to_text() const;
    static VerificationReport parse_text(const std::string& text);
};

/// Executes the configured checks. Deterministic given (config, seed),
/// independent of the SRT_THREADS parallelism level.
VerificationReport run(const RunConfig& config);

/// 0 all ok; 2 some check failed; declared negative controls invert 0/2
/// inside the summaries themselves, so this stays a plain all_ok gate.
int report_exit_code(const VerificationReport& report);

/// Columnar table with a one-line header. Kinds: defect-histogram,
/// radius-vs-point, omega-heatmap.
std::string export_plot_data(const VerificationReport& report, const std::string& kind);

}  // namespace srt
