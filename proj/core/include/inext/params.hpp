#pragma once

#include <string>
#include <variant>

#include "inext/errors.hpp"

namespace inext {

enum class Variant { BeamEta2, BeamEta4, PlateI, PlateII, PlateIII };

bool is_beam(Variant v);
bool is_plate(Variant v);
std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

enum class BeamOrder { Eta2, Eta4 };

// Mass-normalized, nondimensional throughout: unit density, so D carries
// all material content. Unit conversion is a front-end concern.
struct BeamParams {
    double length = 1.0;     // L > 0
    double stiffness = 1.0;  // flexural rigidity D > 0
    BeamOrder order = BeamOrder::Eta2;
};

struct PlateParams {
    double span_x = 1.0;   // L_x > 0
    double span_y = 1.0;   // L_y > 0
    double thickness = 0.1;
    double youngs = 1.0;
    double poisson = 0.3;  // nu in (0, 1/2)

    // D = E h^2 / (12 (1 - nu^2)), exactly as the source convention writes it
    // (note the h^2; a thickness-cubed convention would differ by a factor h).
    double stiffness() const {
        return youngs * thickness * thickness / (12.0 * (1.0 - poisson * poisson));
    }
};

struct ModelSpec {
    Variant variant = Variant::BeamEta2;
    std::variant<BeamParams, PlateParams> params;

    const BeamParams& beam() const { return std::get<BeamParams>(params); }
    const PlateParams& plate() const { return std::get<PlateParams>(params); }
    double stiffness() const;
};

ModelSpec make_model(Variant variant, const BeamParams& p);
ModelSpec make_model(Variant variant, const PlateParams& p);

}  // namespace inext
