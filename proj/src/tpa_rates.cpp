#include "etpa/tpa_rates.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "etpa/constants.hpp"
#include "etpa/errors.hpp"

namespace etpa {
namespace {

void require_positive(const Quantity& q, const char* what) {
    if (!(q.magnitude() > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

[[noreturn]] void throw_mix(const Quantity& a, const Quantity& b) {
    std::string msg = "unit systems differ: ";
    msg += std::string(dimension_name(a.dimension())) + " in " + std::string(unit_symbol(a.unit()));
    msg += " cannot combine with ";
    msg += std::string(dimension_name(b.dimension())) + " in " + std::string(unit_symbol(b.unit()));
    msg += "; convert one operand first";
    throw UnitSystemError(msg);
}

UnitSystem common_system(const Quantity& a, const Quantity& b) {
    const UnitSystem sa = unit_system(a.unit());
    const UnitSystem sb = unit_system(b.unit());
    if (sa != sb) throw_mix(a, b);
    return sa;
}

double flux_in(const Quantity& flux, UnitSystem sys) {
    return flux.in(sys == UnitSystem::cgs ? Unit::per_square_centimetre_second
                                          : Unit::per_square_metre_second);
}

double classical_in(const Quantity& sigma, UnitSystem sys) {
    return sigma.in(sys == UnitSystem::cgs ? Unit::centimetre4_second : Unit::metre4_second);
}

double entangled_in(const Quantity& sigma, UnitSystem sys) {
    return sigma.in(sys == UnitSystem::cgs ? Unit::square_centimetre_entangled
                                           : Unit::square_metre_entangled);
}

std::string format_note(double mixed, double consistent) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "mixed-unit check: cm^4 s cross-section times (m^-2 s^-1 flux)^2 gives "
                  "%.3e 1/s; consistent units give %.3e 1/s; the ratio is the unit "
                  "conversion factor (100 cm/m)^4 = 1e8",
                  mixed, consistent);
    return buf;
}

}  // namespace

void validate(const LaserSource& src) {
    if (src.wavelength.dimension() != Dimension::wavelength)
        throw DimensionError("laser wavelength must carry a wavelength unit");
    require_positive(src.wavelength, "laser wavelength");
    if (const auto* cw = std::get_if<CwSource>(&src.mode)) {
        if (cw->average_power.dimension() != Dimension::power)
            throw DimensionError("CW power must carry a power unit");
        require_positive(cw->average_power, "CW power");
    } else {
        const auto& pulsed = std::get<PulsedSource>(src.mode);
        if (pulsed.pulse_energy.dimension() != Dimension::energy)
            throw DimensionError("pulse energy must carry an energy unit");
        if (pulsed.pulse_width.dimension() != Dimension::time)
            throw DimensionError("pulse width must carry a time unit");
        if (pulsed.rep_rate.dimension() != Dimension::frequency &&
            pulsed.rep_rate.dimension() != Dimension::rate)
            throw DimensionError("repetition rate must carry a frequency unit");
        require_positive(pulsed.pulse_energy, "pulse energy");
        require_positive(pulsed.pulse_width, "pulse width");
        require_positive(pulsed.rep_rate, "repetition rate");
        if (duty_cycle(pulsed) > 1.0)
            throw DomainError("pulse duty cycle exceeds 1 (width times repetition rate)");
    }
}

void validate(const BeamGeometry& geom) {
    if (geom.spot_diameter.dimension() != Dimension::wavelength)
        throw DimensionError("spot diameter must carry a length unit");
    require_positive(geom.spot_diameter, "spot diameter");
}

void validate(const TargetSpecies& species) {
    if (species.sigma_c.dimension() != Dimension::cross_section_classical)
        throw DimensionError("sigma_c must be a classical two-photon cross-section (L^4 T)");
    require_positive(species.sigma_c, "sigma_c");
}

double duty_cycle(const PulsedSource& src) {
    return src.pulse_width.in(Unit::second) * src.rep_rate.in(Unit::hertz);
}

Quantity average_power(const LaserSource& src) {
    if (const auto* cw = std::get_if<CwSource>(&src.mode))
        return {cw->average_power.in(Unit::watt), Unit::watt};
    const auto& pulsed = std::get<PulsedSource>(src.mode);
    return {pulsed.pulse_energy.in(Unit::joule) * pulsed.rep_rate.in(Unit::hertz), Unit::watt};
}

Quantity peak_power(const LaserSource& src) {
    if (const auto* cw = std::get_if<CwSource>(&src.mode))
        return {cw->average_power.in(Unit::watt), Unit::watt};
    const auto& pulsed = std::get<PulsedSource>(src.mode);
    return {pulsed.pulse_energy.in(Unit::joule) / pulsed.pulse_width.in(Unit::second),
            Unit::watt};
}

FluxPair photon_flux(const LaserSource& src, const BeamGeometry& geom) {
    validate(src);
    validate(geom);
    const double d = geom.spot_diameter.in(Unit::metre);
    const double area = std::numbers::pi * d * d / 4.0;
    const double per_watt = src.wavelength.in(Unit::metre) / (constants::hc * area);
    FluxPair flux;
    flux.average = {average_power(src).magnitude() * per_watt, Unit::per_square_metre_second};
    flux.peak = {peak_power(src).magnitude() * per_watt, Unit::per_square_metre_second};
    return flux;
}

Quantity classical_tpa_rate(const Quantity& sigma_c, const Quantity& flux) {
    if (sigma_c.dimension() != Dimension::cross_section_classical)
        throw DimensionError("classical TPA needs a classical cross-section (L^4 T)");
    if (flux.dimension() != Dimension::photon_flux)
        throw DimensionError("classical TPA needs a photon flux");
    if (sigma_c.magnitude() < 0.0) throw DomainError("sigma_c must be non-negative");
    const UnitSystem sys = common_system(sigma_c, flux);
    const double phi = flux_in(flux, sys);
    return {classical_in(sigma_c, sys) * phi * phi, Unit::per_second};
}

Quantity time_averaged_pulsed_rate(const Quantity& sigma_c, const LaserSource& src,
                                   const BeamGeometry& geom) {
    const auto* pulsed = std::get_if<PulsedSource>(&src.mode);
    if (!pulsed) throw DomainError("time-averaged pulsed rate needs a pulsed source");
    const FluxPair flux = photon_flux(src, geom);
    const UnitSystem sys = unit_system(sigma_c.unit());
    const Quantity peak = sys == UnitSystem::cgs
                              ? Quantity{flux.peak.in(Unit::per_square_centimetre_second),
                                         Unit::per_square_centimetre_second}
                              : flux.peak;
    const double burst = classical_tpa_rate(sigma_c, peak).in(Unit::per_second);
    return {burst * duty_cycle(*pulsed), Unit::per_second};
}

Quantity etpa_cross_section(const Quantity& sigma_c, const Quantity& entangled_area,
                            const Quantity& correlation_time) {
    if (sigma_c.dimension() != Dimension::cross_section_classical)
        throw DimensionError("sigma_c must be a classical two-photon cross-section (L^4 T)");
    if (entangled_area.dimension() != Dimension::area)
        throw DimensionError("entangled area must carry an area unit");
    if (correlation_time.dimension() != Dimension::time)
        throw DimensionError("correlation time must carry a time unit");
    require_positive(sigma_c, "sigma_c");
    require_positive(entangled_area, "entangled area");
    require_positive(correlation_time, "correlation time");

    if (unit_system(sigma_c.unit()) == UnitSystem::cgs) {
        const double sigma = sigma_c.in(Unit::centimetre4_second) /
                             (entangled_area.in(Unit::square_centimetre) *
                              correlation_time.in(Unit::second));
        return {sigma, Unit::square_centimetre_entangled};
    }
    const double sigma =
        sigma_c.in(Unit::metre4_second) /
        (entangled_area.in(Unit::square_metre) * correlation_time.in(Unit::second));
    return {sigma, Unit::square_metre_entangled};
}

Quantity etpa_rate(const Quantity& sigma_e, const Quantity& sigma_c, const Quantity& flux) {
    if (sigma_e.dimension() != Dimension::cross_section_entangled)
        throw DimensionError("sigma_e must be an entangled cross-section (L^2)");
    if (sigma_c.dimension() != Dimension::cross_section_classical)
        throw DimensionError("sigma_c must be a classical two-photon cross-section (L^4 T)");
    if (flux.dimension() != Dimension::photon_flux)
        throw DimensionError("etpa_rate needs a photon flux");
    if (sigma_e.magnitude() < 0.0 || sigma_c.magnitude() < 0.0)
        throw DomainError("cross-sections must be non-negative");
    const UnitSystem sys = common_system(sigma_e, sigma_c);
    common_system(sigma_c, flux);
    const double phi = flux_in(flux, sys);
    const double linear = entangled_in(sigma_e, sys) * phi;
    const double quadratic = classical_in(sigma_c, sys) * phi * phi;
    return {linear + quadratic, Unit::per_second};
}

Quantity critical_flux(const Quantity& sigma_e, const Quantity& sigma_c) {
    if (sigma_e.dimension() != Dimension::cross_section_entangled)
        throw DimensionError("sigma_e must be an entangled cross-section (L^2)");
    if (sigma_c.dimension() != Dimension::cross_section_classical)
        throw DimensionError("sigma_c must be a classical two-photon cross-section (L^4 T)");
    if (sigma_e.magnitude() < 0.0) throw DomainError("sigma_e must be non-negative");
    require_positive(sigma_c, "sigma_c");
    const UnitSystem sys = common_system(sigma_e, sigma_c);
    if (sys == UnitSystem::cgs)
        return {entangled_in(sigma_e, sys) / classical_in(sigma_c, sys),
                Unit::per_square_centimetre_second};
    return {entangled_in(sigma_e, sys) / classical_in(sigma_c, sys),
            Unit::per_square_metre_second};
}

RateReport build_rate_report(const LaserSource& src, const BeamGeometry& geom,
                             const TargetSpecies& species, const BiphotonField& biphoton) {
    validate(src);
    validate(geom);
    validate(species);

    const UnitSystem sys = unit_system(species.sigma_c.unit());
    const auto to_system_flux = [&](const Quantity& flux) {
        return sys == UnitSystem::cgs ? Quantity{flux.in(Unit::per_square_centimetre_second),
                                                 Unit::per_square_centimetre_second}
                                      : flux;
    };

    RateReport report;
    report.wavelength = {src.wavelength.in(Unit::nanometre), Unit::nanometre};
    const FluxPair flux = photon_flux(src, geom);
    report.average_flux = flux.average;
    report.peak_flux = flux.peak;

    report.classical_rate_peak = classical_tpa_rate(species.sigma_c, to_system_flux(flux.peak));
    if (const auto* pulsed = std::get_if<PulsedSource>(&src.mode)) {
        (void)pulsed;
        report.classical_rate_average = time_averaged_pulsed_rate(species.sigma_c, src, geom);
    } else {
        report.classical_rate_average =
            classical_tpa_rate(species.sigma_c, to_system_flux(flux.average));
    }

    report.entangled_cross_section = etpa_cross_section(
        species.sigma_c, biphoton.entangled_area, biphoton.correlation_time);
    report.pair_flux = biphoton.pair_flux;
    report.entangled_rate = etpa_rate(report.entangled_cross_section, species.sigma_c,
                                      to_system_flux(biphoton.pair_flux));
    report.critical_flux_value = critical_flux(report.entangled_cross_section, species.sigma_c);

    // What the headline classical numbers become if the m^-2 s^-1 flux is fed
    // straight into a cm^4 s cross-section.
    const double sigma_cgs = species.sigma_c.in(Unit::centimetre4_second);
    const double phi_avg_si = flux.average.in(Unit::per_square_metre_second);
    double mixed = sigma_cgs * phi_avg_si * phi_avg_si;
    if (const auto* pulsed = std::get_if<PulsedSource>(&src.mode)) {
        const double phi_peak_si = flux.peak.in(Unit::per_square_metre_second);
        mixed = sigma_cgs * phi_peak_si * phi_peak_si * duty_cycle(*pulsed);
    }
    report.mixed_unit_note =
        format_note(mixed, report.classical_rate_average.in(Unit::per_second));
    return report;
}

}  // namespace etpa
