#include "etpa/quantities.hpp"

#include <cmath>
#include <cstdio>

#include "etpa/constants.hpp"

namespace etpa {

namespace {

struct UnitInfo {
    Unit unit;
    Dimension dimension;
    double to_si;
    UnitSystem system;
    const char* symbol;
};

constexpr UnitInfo unit_table[] = {
    {Unit::electron_volt, Dimension::energy, constants::ev_to_joule, UnitSystem::neutral, "eV"},
    {Unit::inverse_cm, Dimension::energy, constants::hc * 100.0, UnitSystem::neutral, "cm^-1"},
    {Unit::joule, Dimension::energy, 1.0, UnitSystem::neutral, "J"},
    {Unit::nanometre, Dimension::wavelength, 1e-9, UnitSystem::neutral, "nm"},
    {Unit::micrometre, Dimension::wavelength, 1e-6, UnitSystem::neutral, "um"},
    {Unit::metre, Dimension::wavelength, 1.0, UnitSystem::neutral, "m"},
    {Unit::hertz, Dimension::frequency, 1.0, UnitSystem::neutral, "Hz"},
    {Unit::second, Dimension::time, 1.0, UnitSystem::neutral, "s"},
    {Unit::picosecond, Dimension::time, 1e-12, UnitSystem::neutral, "ps"},
    {Unit::femtosecond, Dimension::time, 1e-15, UnitSystem::neutral, "fs"},
    {Unit::watt, Dimension::power, 1.0, UnitSystem::neutral, "W"},
    {Unit::milliwatt, Dimension::power, 1e-3, UnitSystem::neutral, "mW"},
    {Unit::square_metre, Dimension::area, 1.0, UnitSystem::si, "m^2"},
    {Unit::square_centimetre, Dimension::area, 1e-4, UnitSystem::cgs, "cm^2"},
    {Unit::cubic_metre, Dimension::volume, 1.0, UnitSystem::neutral, "m^3"},
    {Unit::cubic_centimetre, Dimension::volume, 1e-6, UnitSystem::neutral, "cm^3"},
    {Unit::cubic_millimetre, Dimension::volume, 1e-9, UnitSystem::neutral, "mm^3"},
    {Unit::per_square_metre_second, Dimension::photon_flux, 1.0, UnitSystem::si, "m^-2 s^-1"},
    {Unit::per_square_centimetre_second, Dimension::photon_flux, 1e4, UnitSystem::cgs,
     "cm^-2 s^-1"},
    {Unit::metre4_second, Dimension::cross_section_classical, 1.0, UnitSystem::si, "m^4 s"},
    {Unit::centimetre4_second, Dimension::cross_section_classical, 1e-8, UnitSystem::cgs,
     "cm^4 s"},
    {Unit::square_metre_entangled, Dimension::cross_section_entangled, 1.0, UnitSystem::si,
     "m^2"},
    {Unit::square_centimetre_entangled, Dimension::cross_section_entangled, 1e-4,
     UnitSystem::cgs, "cm^2"},
    {Unit::per_second, Dimension::rate, 1.0, UnitSystem::neutral, "s^-1"},
};

constexpr bool table_matches_enum() {
    for (std::size_t i = 0; i < std::size(unit_table); ++i)
        if (static_cast<std::size_t>(unit_table[i].unit) != i) return false;
    return true;
}
static_assert(table_matches_enum(), "unit_table rows must follow enum order");

const UnitInfo& info(Unit u) { return unit_table[static_cast<int>(u)]; }

bool non_negative_dimension(Dimension d) {
    switch (d) {
        case Dimension::time:
        case Dimension::power:
        case Dimension::area:
        case Dimension::volume:
        case Dimension::photon_flux:
        case Dimension::cross_section_classical:
        case Dimension::cross_section_entangled:
            return true;
        default:
            return false;
    }
}

bool spectroscopic(Dimension d) {
    return d == Dimension::energy || d == Dimension::wavelength || d == Dimension::frequency;
}

// Photon energy in joules for a value in any spectroscopic dimension.
double to_photon_energy_si(double magnitude, Unit u) {
    const double si = magnitude * si_factor(u);
    switch (dimension_of(u)) {
        case Dimension::energy:
            return si;
        case Dimension::frequency:
            return constants::planck * si;
        case Dimension::wavelength:
            if (si <= 0.0)
                throw DomainError("cannot convert non-positive wavelength " +
                                  std::to_string(magnitude) + " " + std::string(unit_symbol(u)) +
                                  " to a photon energy");
            return constants::hc / si;
        default:
            throw DimensionError("not a spectroscopic dimension");
    }
}

double from_photon_energy_si(double energy_joule, Unit u) {
    double si = 0.0;
    switch (dimension_of(u)) {
        case Dimension::energy:
            si = energy_joule;
            break;
        case Dimension::frequency:
            si = energy_joule / constants::planck;
            break;
        case Dimension::wavelength:
            if (energy_joule <= 0.0)
                throw DomainError("cannot express non-positive photon energy as a wavelength");
            si = constants::hc / energy_joule;
            break;
        default:
            throw DimensionError("not a spectroscopic dimension");
    }
    return si / si_factor(u);
}

}  // namespace

Dimension dimension_of(Unit u) { return info(u).dimension; }

double si_factor(Unit u) { return info(u).to_si; }

UnitSystem unit_system(Unit u) { return info(u).system; }

std::string_view unit_symbol(Unit u) { return info(u).symbol; }

std::string_view dimension_name(Dimension d) {
    switch (d) {
        case Dimension::energy: return "energy";
        case Dimension::wavelength: return "wavelength";
        case Dimension::frequency: return "frequency";
        case Dimension::time: return "time";
        case Dimension::power: return "power";
        case Dimension::area: return "area";
        case Dimension::volume: return "volume";
        case Dimension::photon_flux: return "photon-flux";
        case Dimension::cross_section_classical: return "cross-section-classical";
        case Dimension::cross_section_entangled: return "cross-section-entangled";
        case Dimension::rate: return "rate";
    }
    return "?";
}

std::optional<Unit> parse_unit(std::string_view token) {
    if (token == "eV") return Unit::electron_volt;
    if (token == "cm-1" || token == "cm^-1" || token == "1/cm") return Unit::inverse_cm;
    if (token == "J") return Unit::joule;
    if (token == "nm") return Unit::nanometre;
    if (token == "um") return Unit::micrometre;
    if (token == "m") return Unit::metre;
    if (token == "Hz") return Unit::hertz;
    if (token == "s") return Unit::second;
    if (token == "ps") return Unit::picosecond;
    if (token == "fs") return Unit::femtosecond;
    if (token == "W") return Unit::watt;
    if (token == "mW") return Unit::milliwatt;
    if (token == "m2" || token == "m^2") return Unit::square_metre;
    if (token == "cm2" || token == "cm^2") return Unit::square_centimetre;
    if (token == "m3" || token == "m^3") return Unit::cubic_metre;
    if (token == "cm3" || token == "cm^3") return Unit::cubic_centimetre;
    if (token == "mm3" || token == "mm^3") return Unit::cubic_millimetre;
    if (token == "m-2s-1" || token == "m^-2s^-1" || token == "1/m2/s")
        return Unit::per_square_metre_second;
    if (token == "cm-2s-1" || token == "cm^-2s^-1" || token == "1/cm2/s")
        return Unit::per_square_centimetre_second;
    if (token == "m4s" || token == "m^4s" || token == "m4.s")
        return Unit::metre4_second;
    if (token == "cm4s" || token == "cm^4s" || token == "cm4.s")
        return Unit::centimetre4_second;
    if (token == "s-1" || token == "s^-1" || token == "1/s") return Unit::per_second;
    return std::nullopt;
}

Quantity::Quantity(double magnitude, Unit unit) : magnitude_(magnitude), unit_(unit) {
    if (!std::isfinite(magnitude))
        throw DomainError("non-finite magnitude for " +
                          std::string(dimension_name(dimension_of(unit))) + " quantity");
    if (magnitude < 0.0 && non_negative_dimension(dimension_of(unit)))
        throw DomainError("negative magnitude " + std::to_string(magnitude) + " for " +
                          std::string(dimension_name(dimension_of(unit))) + " quantity");
}

double Quantity::in(Unit target) const { return convert(*this, target).magnitude(); }

std::string Quantity::str() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", magnitude_);
    return std::string(buf) + " " + std::string(unit_symbol(unit_));
}

Quantity convert(const Quantity& q, Unit target) {
    const Dimension from = q.dimension();
    const Dimension to = dimension_of(target);
    if (from == to) {
        if (q.unit() == target) return q;
        return Quantity(q.magnitude() * si_factor(q.unit()) / si_factor(target), target);
    }
    if (spectroscopic(from) && spectroscopic(to)) {
        const double e = to_photon_energy_si(q.magnitude(), q.unit());
        return Quantity(from_photon_energy_si(e, target), target);
    }
    throw DimensionError("cannot convert " + std::string(dimension_name(from)) + " (" +
                         std::string(unit_symbol(q.unit())) + ") to " +
                         std::string(dimension_name(to)) + " (" +
                         std::string(unit_symbol(target)) + ")");
}

Quantity photon_energy(const Quantity& wavelength) {
    if (wavelength.dimension() != Dimension::wavelength)
        throw DimensionError("photon_energy expects a wavelength, got " +
                             std::string(dimension_name(wavelength.dimension())));
    if (wavelength.magnitude() <= 0.0)
        throw DomainError("photon_energy requires a positive wavelength");
    return Quantity(constants::hc / (wavelength.magnitude() * si_factor(wavelength.unit())),
                    Unit::joule);
}

namespace {

void check_width_args(const Quantity& width, const Quantity& centre, Dimension width_dim) {
    if (width.dimension() != width_dim)
        throw DimensionError("width has dimension " +
                             std::string(dimension_name(width.dimension())));
    if (centre.dimension() != Dimension::wavelength)
        throw DimensionError("centre must be a wavelength");
    if (centre.magnitude() <= 0.0) throw DomainError("centre wavelength must be positive");
}

}  // namespace

Quantity wavelength_width_to_frequency(const Quantity& width, const Quantity& centre) {
    check_width_args(width, centre, Dimension::wavelength);
    const double dl = width.magnitude() * si_factor(width.unit());
    const double l0 = centre.magnitude() * si_factor(centre.unit());
    if (dl < 0.0) throw DomainError("linewidth must be non-negative");
    if (dl > 0.5 * l0)
        throw DomainError("linewidth " + width.str() + " exceeds half the centre wavelength " +
                          centre.str() + "; outside the small-width approximation");
    return Quantity(constants::speed_of_light * dl / (l0 * l0), Unit::hertz);
}

Quantity frequency_width_to_wavelength(const Quantity& width, const Quantity& centre) {
    check_width_args(width, centre, Dimension::frequency);
    const double df = width.magnitude() * si_factor(width.unit());
    const double l0 = centre.magnitude() * si_factor(centre.unit());
    if (df < 0.0) throw DomainError("linewidth must be non-negative");
    const double dl = df * l0 * l0 / constants::speed_of_light;
    if (dl > 0.5 * l0)
        throw DomainError("frequency width " + width.str() +
                          " maps to a wavelength width above half the centre wavelength; "
                          "outside the small-width approximation");
    return Quantity(dl / si_factor(centre.unit()), centre.unit());
}

}  // namespace etpa
