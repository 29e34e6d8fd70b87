#include "etpa/biphoton.hpp"

#include <cmath>
#include <numbers>

#include "etpa/constants.hpp"
#include "etpa/errors.hpp"

namespace etpa {

void validate(const PumpLaser& pump) {
    if (pump.wavelength.dimension() != Dimension::wavelength)
        throw DimensionError("pump wavelength must carry a wavelength unit");
    if (pump.wavelength.magnitude() <= 0.0)
        throw DomainError("pump wavelength must be positive");
    if (pump.linewidth.dimension() != Dimension::frequency)
        throw DimensionError("pump linewidth must carry a frequency unit");
    if (pump.linewidth.magnitude() < 0.0)
        throw DomainError("pump linewidth must be non-negative");
    if (pump.power.dimension() != Dimension::power)
        throw DimensionError("pump power must carry a power unit");
}

void validate(const SpdcConfig& cfg) {
    if (cfg.crossing_angle) {
        const double theta = *cfg.crossing_angle;
        if (!(theta > 0.0) || theta > std::numbers::pi / 2)
            throw DomainError("crossing angle must lie in (0, pi/2]");
    }
    if (cfg.biphoton_bandwidth.dimension() != Dimension::frequency)
        throw DimensionError("biphoton bandwidth must carry a frequency unit");
    if (cfg.biphoton_bandwidth.magnitude() <= 0.0)
        throw DomainError("biphoton bandwidth must be positive");
    if (!(cfg.conversion_efficiency >= 0.0) || cfg.conversion_efficiency > 1.0)
        throw DomainError("conversion efficiency must lie in [0, 1]");
    if (!(cfg.time_bandwidth_factor > 0.0))
        throw DomainError("time-bandwidth factor must be positive");
    if (cfg.entangled_area_override) {
        if (cfg.entangled_area_override->dimension() != Dimension::area)
            throw DimensionError("entangled-area override must carry an area unit");
        if (cfg.entangled_area_override->magnitude() <= 0.0)
            throw DomainError("entangled-area override must be positive");
    } else {
        if (cfg.beam_diameter.dimension() != Dimension::wavelength)
            throw DimensionError("beam diameter must carry a length unit");
        if (cfg.beam_diameter.magnitude() <= 0.0)
            throw DomainError("beam diameter must be positive");
    }
}

Quantity entanglement_time(const Quantity& bandwidth, double kappa) {
    if (bandwidth.dimension() != Dimension::frequency)
        throw DimensionError("bandwidth must carry a frequency unit");
    const double df = bandwidth.in(Unit::hertz);
    if (df <= 0.0) throw DomainError("bandwidth must be positive");
    if (!(kappa > 0.0)) throw DomainError("time-bandwidth factor must be positive");
    return {kappa / df, Unit::second};
}

std::pair<Quantity, Quantity> pair_energies(const Quantity& pump_frequency,
                                            const Quantity& detuning) {
    if (pump_frequency.dimension() != Dimension::frequency ||
        detuning.dimension() != Dimension::frequency)
        throw DimensionError("pair_energies expects frequencies");
    const double fp = pump_frequency.in(Unit::hertz);
    const double delta = detuning.in(Unit::hertz);
    if (fp <= 0.0) throw DomainError("pump frequency must be positive");
    if (!(std::abs(delta) < fp))
        throw DomainError("detuning magnitude must stay below the pump frequency");

    // Work with the larger partner first. half and |delta|/2 are exact
    // halvings, and high >= fp/2 makes fp - high exact (Sterbenz), so the
    // pair sums back to fp with zero rounding error.
    const double half = 0.5 * fp;
    const double high = half + 0.5 * std::abs(delta);
    const double low = fp - high;
    if (low <= 0.0)
        throw DomainError("detuning magnitude must stay below the pump frequency");
    Quantity f_low{low, Unit::hertz};
    Quantity f_high{high, Unit::hertz};
    if (delta >= 0.0) return {f_low, f_high};
    return {f_high, f_low};
}

Quantity pair_rate(const PumpLaser& pump, const SpdcConfig& cfg) {
    validate(pump);
    validate(cfg);
    const double power = pump.power.in(Unit::watt);
    if (power <= 0.0) throw DomainError("pump power must be positive");
    const double lambda = pump.wavelength.in(Unit::metre);
    const double photons_per_second = power * lambda / constants::hc;
    return {cfg.conversion_efficiency * photons_per_second, Unit::per_second};
}

Quantity entangled_area(const SpdcConfig& cfg) {
    validate(cfg);
    if (cfg.entangled_area_override)
        return {cfg.entangled_area_override->in(Unit::square_metre), Unit::square_metre};
    const double d = cfg.beam_diameter.in(Unit::metre);
    return {std::numbers::pi * d * d / 4.0, Unit::square_metre};
}

Quantity crossing_volume(const Quantity& beam_diameter, double crossing_angle) {
    if (beam_diameter.dimension() != Dimension::wavelength)
        throw DimensionError("beam diameter must carry a length unit");
    const double d = beam_diameter.in(Unit::metre);
    if (d <= 0.0) throw DomainError("beam diameter must be positive");
    if (crossing_angle == 0.0) throw DomainError("collinear beams have unbounded overlap");
    if (!(crossing_angle > 0.0) || crossing_angle > std::numbers::pi / 2)
        throw DomainError("crossing angle must lie in (0, pi/2]");
    return {2.0 * d * d * d / (3.0 * std::sin(crossing_angle)), Unit::cubic_metre};
}

BiphotonField make_biphoton_field(const PumpLaser& pump, const SpdcConfig& cfg) {
    validate(pump);
    validate(cfg);
    BiphotonField field;
    field.degenerate_wavelength = {2.0 * pump.wavelength.in(Unit::metre), Unit::metre};
    field.correlation_time = entanglement_time(cfg.biphoton_bandwidth, cfg.time_bandwidth_factor);
    field.entangled_area = entangled_area(cfg);
    field.pair_rate = pair_rate(pump, cfg);
    field.pair_flux = {field.pair_rate.magnitude() / field.entangled_area.magnitude(),
                       Unit::per_square_metre_second};
    field.sum_frequency_linewidth = {pump.linewidth.in(Unit::hertz), Unit::hertz};
    return field;
}

}  // namespace etpa
