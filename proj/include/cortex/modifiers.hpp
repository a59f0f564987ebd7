#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace cortex {

/// The five contextual overlays of the composite score.
enum class Modifier : std::size_t { C = 0, G, T, E, R };

inline constexpr std::array<Modifier, 5> kAllModifiers{Modifier::C, Modifier::G, Modifier::T,
                                                       Modifier::E, Modifier::R};

constexpr std::size_t index_of(Modifier m) noexcept { return static_cast<std::size_t>(m); }

std::string_view to_string(Modifier m) noexcept;

/// Accepts "C", "c", ... Returns nullopt for anything else.
std::optional<Modifier> parse_modifier(std::string_view text) noexcept;

enum class Provenance { unspecified, system_type_default, band_resolution, manual_override };

std::string_view to_string(Provenance p) noexcept;
std::optional<Provenance> parse_provenance(std::string_view text) noexcept;

/// Values of C, G, T, E, R, each in [0,1], with a note on where each came from.
struct ModifierProfile {
    std::array<double, 5> values{};
    std::array<Provenance, 5> provenance{};

    static ModifierProfile from_values(double c, double g, double t, double e, double r,
                                       Provenance source = Provenance::unspecified);

    double operator[](Modifier m) const noexcept { return values[index_of(m)]; }

    void set(Modifier m, double value, Provenance source);

    /// Throws ConfigError naming every modifier outside [0,1].
    void validate() const;

    bool operator==(const ModifierProfile&) const = default;
};

}  // namespace cortex
