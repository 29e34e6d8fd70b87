#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "etpa/errors.hpp"

namespace etpa {

enum class Dimension {
    energy,
    wavelength,
    frequency,
    time,
    power,
    area,
    volume,
    photon_flux,
    cross_section_classical,  // L^4 T
    cross_section_entangled,  // L^2, tagged separately from plain areas
    rate,
};

enum class Unit {
    // energy
    electron_volt,
    inverse_cm,
    joule,
    // wavelength
    nanometre,
    micrometre,
    metre,
    // frequency
    hertz,
    // time
    second,
    picosecond,
    femtosecond,
    // power
    watt,
    milliwatt,
    // area
    square_metre,
    square_centimetre,
    // volume
    cubic_metre,
    cubic_centimetre,
    cubic_millimetre,
    // photon flux
    per_square_metre_second,
    per_square_centimetre_second,
    // classical TPA cross-section
    metre4_second,
    centimetre4_second,
    // ETPA cross-section
    square_metre_entangled,
    square_centimetre_entangled,
    // rate
    per_second,
};

// cgs vs SI tagging for the quantities where the rate laws care (fluxes and
// cross-sections). Everything else is "neutral".
enum class UnitSystem { si, cgs, neutral };

Dimension dimension_of(Unit u);
double si_factor(Unit u);  // magnitude in u, times this, = canonical SI magnitude
UnitSystem unit_system(Unit u);
std::string_view unit_symbol(Unit u);
std::string_view dimension_name(Dimension d);

// CLI-facing unit spellings ("eV", "cm-1", "m-2s-1", "cm4s", ...).
// Plain "cm2"/"m2" map to the area units.
std::optional<Unit> parse_unit(std::string_view token);

//! A tagged physical value. Construction rejects NaN/Inf, and rejects
//! negative magnitudes for fluxes, areas, volumes, times, powers and
//! cross-sections.
class Quantity {
public:
    Quantity(double magnitude, Unit unit);

    double magnitude() const { return magnitude_; }
    Unit unit() const { return unit_; }
    Dimension dimension() const { return dimension_of(unit_); }

    //! Converted magnitude; same conversion rules as convert().
    double in(Unit target) const;

    std::string str() const;  // "2.56e+28 m^-2 s^-1"

private:
    double magnitude_;
    Unit unit_;
};

// Unit conversion. Within a dimension this is a pure rescale. Across the
// spectroscopic dimensions (energy, wavelength, frequency) the photon
// relation E = h f = h c / lambda is applied, so e.g. 400 nm -> 25000 cm^-1.
// Any other cross-dimension request throws DimensionError naming both
// dimensions.
Quantity convert(const Quantity& q, Unit target);

//! E = hc/lambda, returned in joules. Throws DomainError for lambda <= 0.
Quantity photon_energy(const Quantity& wavelength);

// Small-width linewidth conversions about a centre wavelength:
// delta_f = c * delta_lambda / lambda0^2. Widths above lambda0/2 are outside
// the approximation and rejected.
Quantity wavelength_width_to_frequency(const Quantity& width, const Quantity& centre);
Quantity frequency_width_to_wavelength(const Quantity& width, const Quantity& centre);

}  // namespace etpa
