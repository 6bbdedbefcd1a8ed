#include "inext/params.hpp"

#include <cmath>

namespace inext {

bool is_beam(Variant v) { return v == Variant::BeamEta2 || v == Variant::BeamEta4; }
bool is_plate(Variant v) { return !is_beam(v); }

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::BeamEta2: return "beam_eta2";
        case Variant::BeamEta4: return "beam_eta4";
        case Variant::PlateI: return "plate_1";
        case Variant::PlateII: return "plate_2";
        case Variant::PlateIII: return "plate_3";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "beam_eta2") return Variant::BeamEta2;
    if (name == "beam_eta4") return Variant::BeamEta4;
    if (name == "plate_1") return Variant::PlateI;
    if (name == "plate_2") return Variant::PlateII;
    if (name == "plate_3") return Variant::PlateIII;
    throw BadParameter("unknown model variant: " + name);
}

double ModelSpec::stiffness() const {
    return is_beam(variant) ? beam().stiffness : plate().stiffness();
}

static void check_finite_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw BadParameter(std::string(name) + " must be finite and > 0");
}

ModelSpec make_model(Variant variant, const BeamParams& p) {
    if (!is_beam(variant))
        throw BadParameter("variant/params mismatch: beam params given for plate variant");
    check_finite_positive(p.length, "length");
    check_finite_positive(p.stiffness, "stiffness");
    BeamParams q = p;
    q.order = (variant == Variant::BeamEta4) ? BeamOrder::Eta4 : BeamOrder::Eta2;
    return ModelSpec{variant, q};
}

ModelSpec make_model(Variant variant, const PlateParams& p) {
    if (!is_plate(variant))
        throw BadParameter("variant/params mismatch: plate params given for beam variant");
    check_finite_positive(p.span_x, "span_x");
    check_finite_positive(p.span_y, "span_y");
    check_finite_positive(p.thickness, "thickness");
    check_finite_positive(p.youngs, "youngs");
    if (!(p.poisson > 0.0 && p.poisson < 0.5))
        throw NuOutOfRange("poisson ratio must lie in (0, 1/2)");
    return ModelSpec{variant, p};
}

}  // namespace inext
