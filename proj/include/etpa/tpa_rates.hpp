#pragma once

#include <string>
#include <variant>

#include "etpa/biphoton.hpp"
#include "etpa/quantities.hpp"

namespace etpa {

struct CwSource {
    Quantity average_power{1.0, Unit::watt};
};

//! Rectangular pulse model: peak power = energy/width, duty = width * rate.
struct PulsedSource {
    Quantity pulse_energy{0.1, Unit::joule};
    Quantity pulse_width{100.0, Unit::picosecond};
    Quantity rep_rate{10.0, Unit::hertz};
};

struct LaserSource {
    Quantity wavelength{400.0, Unit::nanometre};
    std::variant<CwSource, PulsedSource> mode = CwSource{};
};

//! Top-hat beam: uniform flux over the pi d^2/4 spot.
struct BeamGeometry {
    Quantity spot_diameter{1.0e-5, Unit::metre};
};

struct TargetSpecies {
    std::string name = "target";
    Quantity sigma_c{1.0e-48, Unit::centimetre4_second};
};

struct FluxPair {
    Quantity average{0.0, Unit::per_square_metre_second};
    Quantity peak{0.0, Unit::per_square_metre_second};
};

struct RateReport {
    Quantity wavelength{0.0, Unit::nanometre};
    Quantity average_flux{0.0, Unit::per_square_metre_second};
    Quantity peak_flux{0.0, Unit::per_square_metre_second};
    Quantity classical_rate_average{0.0, Unit::per_second};
    Quantity classical_rate_peak{0.0, Unit::per_second};
    Quantity entangled_cross_section{0.0, Unit::square_centimetre_entangled};
    Quantity pair_flux{0.0, Unit::per_square_metre_second};
    Quantity entangled_rate{0.0, Unit::per_second};
    Quantity critical_flux_value{0.0, Unit::per_square_centimetre_second};
    //! What the classical rate becomes when a cm^4 s cross-section meets a
    //! m^-2 s^-1 flux without conversion. Rates per atom quoted in the 1e8
    //! and 1e17 range for these scenarios arise from exactly that mix.
    std::string mixed_unit_note;
};

void validate(const LaserSource& src);
void validate(const BeamGeometry& geom);
void validate(const TargetSpecies& species);

double duty_cycle(const PulsedSource& src);
Quantity average_power(const LaserSource& src);
Quantity peak_power(const LaserSource& src);

FluxPair photon_flux(const LaserSource& src, const BeamGeometry& geom);

//! R = sigma_c * flux^2, per atom. The cross-section and flux must already
//! share a unit system; mixing cgs with SI is an error, never a silent
//! conversion.
Quantity classical_tpa_rate(const Quantity& sigma_c, const Quantity& flux);

//! R_avg = sigma_c * peak_flux^2 * duty for a pulsed source.
Quantity time_averaged_pulsed_rate(const Quantity& sigma_c, const LaserSource& src,
                                   const BeamGeometry& geom);

//! sigma_e = sigma_c / (A_e tau_e). Result follows sigma_c's unit system.
Quantity etpa_cross_section(const Quantity& sigma_c, const Quantity& entangled_area,
                            const Quantity& correlation_time);

//! R = sigma_e * flux + sigma_c * flux^2, per atom.
Quantity etpa_rate(const Quantity& sigma_e, const Quantity& sigma_c, const Quantity& flux);

//! The flux where the linear and quadratic terms match: sigma_e / sigma_c.
Quantity critical_flux(const Quantity& sigma_e, const Quantity& sigma_c);

//! Full scenario summary. Classical rates use the laser flux; the entangled
//! rate is evaluated at the biphoton pair flux.
RateReport build_rate_report(const LaserSource& src, const BeamGeometry& geom,
                             const TargetSpecies& species, const BiphotonField& biphoton);

}  // namespace etpa
