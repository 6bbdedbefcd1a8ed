#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inext/dynamics.hpp"
#include "inext/statics.hpp"

namespace inext {

struct BasisConfig {
    int n_wx = 6, n_wy = 1;    // transverse modes (n_wy ignored for beams)
    int n_ix = -1, n_iy = -1;  // in-plane modes; -1 = derived default
};

struct InitialConfig {
    int mode_x = 1, mode_y = 1;  // 1-based mode indices
    double amplitude = 0.0;
    double velocity = 0.0;
    // Optional file with one transverse modal coefficient per line; overrides
    // the single-mode recipe. Must exist at parse time.
    std::optional<std::string> coefficients_file;
};

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::ImplicitMidpointProjected;
    ConstraintMode constraints = ConstraintMode::Multiplier;
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<double> snapshot_times;
    double probe_x = -1.0, probe_y = -1.0;  // -1 = free end / mid chord
    bool plots = true;
};

struct ScenarioConfig {
    ModelSpec model = make_model(Variant::BeamEta2, BeamParams{});
    BasisConfig basis;
    InitialConfig initial;
    IntegratorConfig integrator;
    std::optional<LoadSpec> load;  // statics verb only
    OutputConfig output;

    std::vector<std::string> defaulted;  // dotted field names that used defaults
    std::string source_text;             // raw config bytes (hashed for manifests)

    int inplane_modes_x() const;  // effective in-plane counts
    int inplane_modes_y() const;
    double probe_x() const;  // effective probe location
    double probe_y() const;
};

// Parse and structurally validate; errors name the offending field (or carry
// the parser's line/byte position for malformed JSON).
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Semantic checks beyond parsing: positive steps, probe inside the domain,
// mode indices within the basis, model/scheme compatibility. UnsupportedMode
// propagates for combinations the solvers refuse.
void validate_config(const ScenarioConfig& c);

// Human-readable validation summary: "valid" plus the effective defaults.
std::string validation_report(const ScenarioConfig& c);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace inext
