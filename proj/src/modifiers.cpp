#include "cortex/modifiers.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cortex/error.hpp"

namespace cortex {

std::string_view to_string(Modifier m) noexcept {
    switch (m) {
        case Modifier::C: return "C";
        case Modifier::G: return "G";
        case Modifier::T: return "T";
        case Modifier::E: return "E";
        case Modifier::R: return "R";
    }
    return "?";
}

std::optional<Modifier> parse_modifier(std::string_view text) noexcept {
    if (text.size() != 1) return std::nullopt;
    switch (text[0]) {
        case 'C': case 'c': return Modifier::C;
        case 'G': case 'g': return Modifier::G;
        case 'T': case 't': return Modifier::T;
        case 'E': case 'e': return Modifier::E;
        case 'R': case 'r': return Modifier::R;
        default: return std::nullopt;
    }
}

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::unspecified: return "unspecified";
        case Provenance::system_type_default: return "system-type-default";
        case Provenance::band_resolution: return "band-resolution";
        case Provenance::manual_override: return "manual-override";
    }
    return "unspecified";
}

std::optional<Provenance> parse_provenance(std::string_view text) noexcept {
    for (auto p : {Provenance::unspecified, Provenance::system_type_default,
                   Provenance::band_resolution, Provenance::manual_override}) {
        if (to_string(p) == text) return p;
    }
    return std::nullopt;
}

ModifierProfile ModifierProfile::from_values(double c, double g, double t, double e, double r,
                                             Provenance source) {
    ModifierProfile p;
    p.values = {c, g, t, e, r};
    p.provenance.fill(source);
    return p;
}

void ModifierProfile::set(Modifier m, double value, Provenance source) {
    values[index_of(m)] = value;
    provenance[index_of(m)] = source;
}

void ModifierProfile::validate() const {
    std::vector<std::string> problems;
    for (auto m : kAllModifiers) {
        const double v = (*this)[m];
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            problems.push_back("modifier " + std::string(to_string(m)) + " = " + std::to_string(v) +
                               " is outside [0,1]");
        }
    }
    if (!problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
        throw ConfigError(msg);
    }
}

}  // namespace cortex
