#include "egen/geo.hpp"

#include <cmath>

namespace egen {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

double haversine_m(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg) {
    double lat1 = lat1_deg * kDegToRad;
    double lat2 = lat2_deg * kDegToRad;
    double dlat = (lat2_deg - lat1_deg) * kDegToRad;
    double dlon = (lon2_deg - lon1_deg) * kDegToRad;

    double s1 = std::sin(dlat / 2.0);
    double s2 = std::sin(dlon / 2.0);
    double a = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    if (a > 1.0) a = 1.0; // rounding near antipodes must not produce sqrt(<0)
    double c = 2.0 * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));
    return kEarthRadiusM * c;
}

} // namespace egen
