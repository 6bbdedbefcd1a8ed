#include "inext/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace inext {

namespace {

using nlohmann::json;

// Tracks which fields fell back to defaults while reading.
struct Reader {
    const json& j;
    std::string prefix;
    std::vector<std::string>* defaulted;

    bool has(const std::string& key) const { return j.contains(key); }

    template <typename T>
    T get(const std::string& key, const T& fallback) const {
        if (!j.contains(key)) {
            defaulted->push_back(prefix + key);
            return fallback;
        }
        return read<T>(key);
    }

    template <typename T>
    T require(const std::string& key) const {
        if (!j.contains(key))
            throw ConfigError(prefix + key + ": required field is missing");
        return read<T>(key);
    }

    template <typename T>
    T read(const std::string& key) const {
        try {
            return j.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(prefix + key + ": " + e.what());
        }
    }
};

Scheme scheme_from_name(const std::string& s) {
    if (s == "implicit_midpoint") return Scheme::ImplicitMidpointProjected;
    if (s == "explicit_rk4") return Scheme::ExplicitRk4Reduced;
    throw ConfigError("integrator.scheme: unknown value '" + s +
                      "' (use implicit_midpoint or explicit_rk4)");
}

ConstraintMode constraints_from_name(const std::string& s) {
    if (s == "multiplier") return ConstraintMode::Multiplier;
    if (s == "reduced") return ConstraintMode::Reduced;
    throw ConfigError("integrator.constraints: unknown value '" + s +
                      "' (use multiplier or reduced)");
}

LoadKind load_kind_from_name(const std::string& s) {
    if (s == "tip_force") return LoadKind::TipForce;
    if (s == "edge_line_load") return LoadKind::EdgeLineLoad;
    if (s == "uniform_pressure") return LoadKind::UniformPressure;
    throw ConfigError("load.kind: unknown value '" + s +
                      "' (use tip_force, edge_line_load or uniform_pressure)");
}

}  // namespace

int ScenarioConfig::inplane_modes_x() const {
    if (basis.n_ix > 0) return basis.n_ix;
    // Beams: the in-plane expansion must resolve w_x^2 pointwise, so the
    // default is generous. Plates: match the transverse resolution.
    return is_beam(model.variant) ? std::max(4 * basis.n_wx, 24) : basis.n_wx;
}

int ScenarioConfig::inplane_modes_y() const {
    if (basis.n_iy > 0) return basis.n_iy;
    return basis.n_wy;
}

double ScenarioConfig::probe_x() const {
    if (output.probe_x >= 0.0) return output.probe_x;
    return is_beam(model.variant) ? model.beam().length : model.plate().span_x;
}

double ScenarioConfig::probe_y() const {
    if (!is_beam(model.variant) && output.probe_y >= 0.0) return output.probe_y;
    return is_beam(model.variant) ? 0.0 : 0.5 * model.plate().span_y;
}

ScenarioConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    ScenarioConfig c;
    c.source_text = text;

    if (!j.contains("model") || !j["model"].is_object())
        throw ConfigError("model: required object is missing");
    {
        Reader r{j["model"], "model.", &c.defaulted};
        Variant v;
        try {
            v = variant_from_name(r.require<std::string>("variant"));
        } catch (const BadParameter& e) {
            throw ConfigError(std::string("model.variant: ") + e.what());
        }
        try {
            if (is_beam(v)) {
                BeamParams p;
                p.length = r.get("length", 1.0);
                p.stiffness = r.get("stiffness", 1.0);
                p.order = (v == Variant::BeamEta4) ? BeamOrder::Eta4 : BeamOrder::Eta2;
                c.model = make_model(v, p);
            } else {
                PlateParams p;
                p.span_x = r.get("span_x", 1.0);
                p.span_y = r.get("span_y", 1.0);
                p.thickness = r.get("thickness", 0.1);
                p.youngs = r.get("youngs", 1.0);
                p.poisson = r.get("poisson", 0.3);
                c.model = make_model(v, p);
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("model: ") + e.what());
        }
    }

    {
        json empty = json::object();
        const json& jb = j.contains("basis") ? j["basis"] : empty;
        if (!jb.is_object()) throw ConfigError("basis: must be an object");
        Reader r{jb, "basis.", &c.defaulted};
        // Beam configs may use the aliases n_w / n_u.
        if (r.has("n_w"))
            c.basis.n_wx = r.read<int>("n_w");
        else
            c.basis.n_wx = r.get("n_wx", 6);
        c.basis.n_wy = r.get("n_wy", is_beam(c.model.variant) ? 1 : 3);
        if (r.has("n_u"))
            c.basis.n_ix = r.read<int>("n_u");
        else
            c.basis.n_ix = r.get("n_ix", -1);
        c.basis.n_iy = r.get("n_iy", -1);
    }

    {
        json empty = json::object();
        const json& ji = j.contains("initial") ? j["initial"] : empty;
        if (!ji.is_object()) throw ConfigError("initial: must be an object");
        Reader r{ji, "initial.", &c.defaulted};
        c.initial.mode_x = r.get("mode", 1);
        c.initial.mode_y = r.get("mode_y", 1);
        c.initial.amplitude = r.get("amplitude", 0.0);
        c.initial.velocity = r.get("velocity", 0.0);
        if (r.has("coefficients_file")) {
            c.initial.coefficients_file = r.read<std::string>("coefficients_file");
            std::ifstream probe(*c.initial.coefficients_file);
            if (!probe)
                throw ConfigError("initial.coefficients_file: cannot read '" +
                                  *c.initial.coefficients_file + "'");
        }
    }

    {
        json empty = json::object();
        const json& ji = j.contains("integrator") ? j["integrator"] : empty;
        if (!ji.is_object()) throw ConfigError("integrator: must be an object");
        Reader r{ji, "integrator.", &c.defaulted};
        c.integrator.dt = r.get("dt", 1e-3);
        c.integrator.t_end = r.get("t_end", 1.0);
        c.integrator.scheme = scheme_from_name(
            r.get<std::string>("scheme", "implicit_midpoint"));
        c.integrator.constraints = constraints_from_name(
            r.get<std::string>("constraints", "multiplier"));
    }

    if (j.contains("load")) {
        if (!j["load"].is_object()) throw ConfigError("load: must be an object");
        Reader r{j["load"], "load.", &c.defaulted};
        LoadSpec l;
        l.kind = load_kind_from_name(r.get<std::string>("kind", "tip_force"));
        l.magnitude = r.require<double>("magnitude");
        c.load = l;
    }

    {
        json empty = json::object();
        const json& jo = j.contains("output") ? j["output"] : empty;
        if (!jo.is_object()) throw ConfigError("output: must be an object");
        Reader r{jo, "output.", &c.defaulted};
        c.output.directory = r.get<std::string>("directory", "out");
        c.output.snapshot_times = r.get("snapshots", std::vector<double>{});
        c.output.probe_x = r.get("probe_x", -1.0);
        c.output.probe_y = r.get("probe_y", -1.0);
        c.output.plots = r.get("plots", true);
    }

    std::sort(c.defaulted.begin(), c.defaulted.end());
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(const ScenarioConfig& c) {
    if (!(c.integrator.dt > 0.0) || !std::isfinite(c.integrator.dt))
        throw ConfigError("integrator.dt: must be positive");
    if (!(c.integrator.t_end > 0.0) || !std::isfinite(c.integrator.t_end))
        throw ConfigError("integrator.t_end: must be positive");
    if (c.basis.n_wx < 1) throw ConfigError("basis.n_wx: must be at least 1");
    if (!is_beam(c.model.variant) && c.basis.n_wy < 1)
        throw ConfigError("basis.n_wy: must be at least 1");
    if (!std::isfinite(c.initial.amplitude))
        throw ConfigError("initial.amplitude: must be finite");
    if (c.initial.mode_x < 1 || c.initial.mode_x > c.basis.n_wx)
        throw ConfigError("initial.mode: outside the transverse basis");
    if (!is_beam(c.model.variant) &&
        (c.initial.mode_y < 1 || c.initial.mode_y > c.basis.n_wy))
        throw ConfigError("initial.mode_y: outside the transverse basis");
    if (c.load && !std::isfinite(c.load->magnitude))
        throw ConfigError("load.magnitude: must be finite");
    if (c.load && is_beam(c.model.variant) &&
        c.load->kind == LoadKind::EdgeLineLoad)
        throw ConfigError("load.kind: edge_line_load applies to plates only");

    const double lx =
        is_beam(c.model.variant) ? c.model.beam().length : c.model.plate().span_x;
    if (c.probe_x() < 0.0 || c.probe_x() > lx)
        throw ConfigError("output.probe_x: outside the domain");
    if (!is_beam(c.model.variant) &&
        (c.probe_y() < 0.0 || c.probe_y() > c.model.plate().span_y))
        throw ConfigError("output.probe_y: outside the domain");

    if (c.integrator.scheme == Scheme::ExplicitRk4Reduced &&
        c.integrator.constraints != ConstraintMode::Reduced)
        throw ConfigError(
            "integrator.scheme: explicit_rk4 requires constraints = reduced");
    // Model/mode combinations the solvers refuse surface here too.
    if (c.model.variant == Variant::PlateIII && !c.load)
        throw UnsupportedMode(
            "shear-strain plate model supports statics only (add a load block "
            "and use the static verb)");
    if (c.model.variant == Variant::PlateI &&
        c.integrator.constraints == ConstraintMode::Reduced)
        throw UnsupportedMode(
            "three-constraint plate model cannot eliminate the in-plane fields");
}

std::string validation_report(const ScenarioConfig& c) {
    validate_config(c);
    std::ostringstream out;
    out << "valid: " << variant_name(c.model.variant) << " scenario\n";
    out << "effective defaults:\n";
    if (c.defaulted.empty()) out << "  (none)\n";
    for (const auto& f : c.defaulted) out << "  " << f << "\n";
    out << "derived: in-plane modes " << c.inplane_modes_x();
    if (!is_beam(c.model.variant)) out << " x " << c.inplane_modes_y();
    out << ", probe (" << c.probe_x();
    if (!is_beam(c.model.variant)) out << ", " << c.probe_y();
    out << ")\n";
    return out.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace inext
