#pragma once

namespace etpa::constants {

// 2019 SI defining constants (CODATA 2018); h, c and e are exact by definition.
inline constexpr double planck = 6.62607015e-34;             // J s
inline constexpr double speed_of_light = 2.99792458e8;       // m/s
inline constexpr double elementary_charge = 1.602176634e-19; // C

inline constexpr double ev_to_joule = elementary_charge;     // J/eV
inline constexpr double hc = planck * speed_of_light;        // J m, 1.98644585714e-25

// 1 eV expressed as a wavenumber: e/(h c) / 100 = 8065.54393734921 cm^-1
inline constexpr double ev_to_inverse_cm = elementary_charge / (hc * 100.0);

}  // namespace etpa::constants
