/// @file geo.hpp
/// Great-circle distance on the sphere used throughout the simulator.

#pragma once

namespace egen {

/// Mean Earth radius, metres.
inline constexpr double kEarthRadiusM = 6371000.0;

/// Haversine distance in metres between two WGS-style lat/lon points given
/// in degrees. Symmetric, zero for identical points.
double haversine_m(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg);

} // namespace egen
