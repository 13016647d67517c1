#pragma once

#include <cmath>

// Unit conversions and physical constants. All library-internal quantities
// are linear (watts, meters, dimensionless ratios); dB/dBm/dBi appear only
// at the configuration boundary.
namespace flexd {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kEarthRadiusM = 6371.0e3;     // mean Earth radius, m

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }
inline double watts_to_dbw(double w) { return 10.0 * std::log10(w); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

}  // namespace flexd
