#include "quadsemi/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace quadsemi {

Tolerances Tolerances::scaled(double factor) const {
    Tolerances t = *this;
    t.psd *= factor;
    t.ellipticity *= factor;
    t.rank *= factor;
    t.cluster *= factor;
    t.structure *= factor;
    t.fiber *= factor;
    t.alpha_floor *= factor;
    return t;
}

Tolerances Tolerances::from_env() {
    const char* raw = std::getenv("QUADSEMI_TOL");
    if (raw == nullptr || *raw == '\0') return Tolerances{};
    try {
        double factor = std::stod(raw);
        if (factor > 0.0) return Tolerances{}.scaled(factor);
    } catch (const std::exception&) {
    }
    return Tolerances{};
}

}  // namespace quadsemi
