#pragma once

#include <cmath>

namespace tp3 {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }

/// Great-circle distance in meters between two (lat, lon) pairs in degrees.
inline double haversine_m(double lat1, double lon1, double lat2, double lon2) {
    const double phi1 = deg2rad(lat1);
    const double phi2 = deg2rad(lat2);
    const double dphi = deg2rad(lat2 - lat1);
    const double dlam = deg2rad(lon2 - lon1);
    const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlam / 2) * std::sin(dlam / 2);
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(a)));
}

// Meters per degree of latitude (spherical approximation).
inline constexpr double kMetersPerDegLat = kEarthRadiusM * kPi / 180.0;

inline double meters_per_deg_lon(double lat) {
    return kMetersPerDegLat * std::cos(deg2rad(lat));
}

} // namespace tp3
