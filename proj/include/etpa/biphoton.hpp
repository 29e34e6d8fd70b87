#pragma once

#include <optional>
#include <utility>

#include "etpa/quantities.hpp"

namespace etpa {

enum class SpdcType { type_i, type_ii };

//! CW pump for the down-conversion source. The linewidth is the width of the
//! summed pair energy f1+f2, which the source inherits from the pump
//! unchanged: pair correlation time and total-energy sharpness are
//! independent knobs.
struct PumpLaser {
    Quantity wavelength{405.0, Unit::nanometre};
    Quantity linewidth{0.0, Unit::hertz};
    Quantity power{0.0, Unit::watt};
};

struct SpdcConfig {
    SpdcType type = SpdcType::type_i;
    //! Beam crossing half-geometry: empty means collinear; otherwise the
    //! cylinder axes cross at this angle in radians, 0 < theta <= pi/2.
    std::optional<double> crossing_angle = {};
    Quantity biphoton_bandwidth{1.0e14, Unit::hertz};
    Quantity beam_diameter{1.0e-5, Unit::metre};
    double conversion_efficiency = 0.0;  // pairs per pump photon, 0..1
    double time_bandwidth_factor = 1.0;  // kappa in tau_e = kappa / bandwidth
    std::optional<Quantity> entangled_area_override = {};
};

//! Derived source description. Rate-law linear flux scaling presumes photons
//! arriving in tightly correlated pairs, g2(0) >> 1; this struct carries the
//! timing and geometry numbers that enter the rate model, nothing about
//! photon statistics beyond that.
struct BiphotonField {
    Quantity degenerate_wavelength{0.0, Unit::metre};
    Quantity correlation_time{0.0, Unit::second};       // tau_e
    Quantity entangled_area{0.0, Unit::square_metre};   // A_e
    Quantity pair_rate{0.0, Unit::per_second};          // pairs/s
    Quantity pair_flux{0.0, Unit::per_square_metre_second};
    Quantity sum_frequency_linewidth{0.0, Unit::hertz};
};

void validate(const PumpLaser& pump);
void validate(const SpdcConfig& cfg);

//! tau_e = kappa / bandwidth. kappa = 1 is the bare reciprocal convention;
//! 0.44 approximates a Gaussian time-bandwidth product.
Quantity entanglement_time(const Quantity& bandwidth, double kappa = 1.0);

//! Split a pump photon at frequency f_p into (f1, f2) = (f_p/2 - D/2,
//! f_p/2 + D/2) for detuning D. The pair is constructed so that
//! f1 + f2 == f_p holds exactly in floating point, not approximately.
std::pair<Quantity, Quantity> pair_energies(const Quantity& pump_frequency,
                                            const Quantity& detuning);

//! Pairs per second: efficiency * power / (h f_p).
Quantity pair_rate(const PumpLaser& pump, const SpdcConfig& cfg);

//! A_e: the override when given, else the circular-beam pi d^2/4.
Quantity entangled_area(const SpdcConfig& cfg);

//! Overlap volume of two equal circular cylinders of diameter d whose axes
//! intersect at angle theta: V = 2 d^3 / (3 sin theta).
Quantity crossing_volume(const Quantity& beam_diameter, double crossing_angle);

BiphotonField make_biphoton_field(const PumpLaser& pump, const SpdcConfig& cfg);

}  // namespace etpa
