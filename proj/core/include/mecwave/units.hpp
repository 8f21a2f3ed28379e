#pragma once

#include <cmath>

// Conversions used only at the configuration boundary. Everything inside the
// library is bits, Hz, seconds, watts, joules and CPU cycles.
namespace mecwave::units {

inline constexpr double kBitsPerKilobyte = 8.0 * 1024.0;

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
inline constexpr double milliwatts_to_watts(double mw) { return mw * 1e-3; }
inline constexpr double ghz_to_hz(double ghz) { return ghz * 1e9; }
inline constexpr double hz_to_ghz(double hz) { return hz * 1e-9; }
inline constexpr double mhz_to_hz(double mhz) { return mhz * 1e6; }
inline constexpr double kb_to_bits(double kb) { return kb * kBitsPerKilobyte; }
inline constexpr double bits_to_kb(double bits) { return bits / kBitsPerKilobyte; }

}  // namespace mecwave::units
