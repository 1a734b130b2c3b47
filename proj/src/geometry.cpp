#include "leotdd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leotdd {

namespace {

// Rounding slack for angles produced by coverage_central_angle() itself.
constexpr double kAngleSlack = 1e-12;

}  // namespace

void ConstellationGeometry::validate() const {
    if (!(earth_radius_km > 0.0)) throw std::invalid_argument("earth_radius_km must be positive");
    if (!(gravitational_parameter > 0.0)) throw std::invalid_argument("gravitational_parameter must be positive");
    if (!(altitude_km > 0.0)) throw std::invalid_argument("altitude_km must be positive");
    // pi/2 is admitted: a nadir-only footprint is a legal degenerate case.
    if (!(min_elevation_rad > 0.0 && min_elevation_rad <= kPi / 2.0))
        throw std::invalid_argument("min_elevation must lie in (0, 90] degrees");
}

double orbital_velocity(const ConstellationGeometry& geom) {
    return std::sqrt(geom.gravitational_parameter / geom.orbit_radius_km());
}

double slant_range_from_elevation(const ConstellationGeometry& geom, double elevation_rad) {
    if (elevation_rad < geom.min_elevation_rad - kAngleSlack || elevation_rad > kPi / 2.0 + kAngleSlack)
        throw std::domain_error("elevation outside [min_elevation, 90 deg]");
    const double re = geom.earth_radius_km;
    const double ratio = geom.orbit_radius_km() / re;
    const double c = std::cos(elevation_rad);
    return re * (std::sqrt(ratio * ratio - c * c) - std::sin(elevation_rad));
}

double slant_range_from_central_angle(const ConstellationGeometry& geom, double central_angle_rad) {
    if (central_angle_rad < 0.0 || central_angle_rad > coverage_central_angle(geom) + kAngleSlack)
        throw std::domain_error("central angle outside the coverage cap");
    const double re = geom.earth_radius_km;
    const double rs = geom.orbit_radius_km();
    // (rs - re)^2 + 2 re rs (1 - cos) avoids cancellation near nadir.
    const double half = std::sin(central_angle_rad / 2.0);
    return std::sqrt(geom.altitude_km * geom.altitude_km + 4.0 * re * rs * half * half);
}

double elevation_from_central_angle(const ConstellationGeometry& geom, double central_angle_rad) {
    const double k = geom.earth_radius_km / geom.orbit_radius_km();
    return std::atan2(std::cos(central_angle_rad) - k, std::sin(central_angle_rad));
}

double coverage_central_angle(const ConstellationGeometry& geom) {
    const double k = geom.earth_radius_km / geom.orbit_radius_km();
    const double eps = geom.min_elevation_rad;
    return std::max(0.0, std::acos(k * std::cos(eps)) - eps);
}

double coverage_radius(const ConstellationGeometry& geom) {
    return geom.earth_radius_km * coverage_central_angle(geom);
}

double max_slant_range(const ConstellationGeometry& geom) {
    return slant_range_from_elevation(geom, geom.min_elevation_rad);
}

double propagation_delay(double slant_range_km) { return slant_range_km / kSpeedOfLightKmPerS; }

double differential_delay(const ConstellationGeometry& geom) {
    return propagation_delay(max_slant_range(geom)) - propagation_delay(geom.altitude_km);
}

double radial_velocity(const ConstellationGeometry& geom, const UePlacement& ue) {
    if (ue.central_angle_rad == 0.0) return 0.0;
    const double range = slant_range_from_central_angle(geom, ue.central_angle_rad);
    return orbital_velocity(geom) * geom.earth_radius_km * std::sin(ue.central_angle_rad) *
           std::cos(ue.azimuth_rad) / range;
}

double doppler_shift(double radial_velocity_km_s, double carrier_hz) {
    return radial_velocity_km_s / kSpeedOfLightKmPerS * carrier_hz;
}

UePlacement placement_from_unit(const ConstellationGeometry& geom, double u_radial, double u_azimuth) {
    const double cap = coverage_central_angle(geom);
    const double lambda = std::acos(1.0 - u_radial * (1.0 - std::cos(cap)));
    return {std::min(lambda, cap), 2.0 * kPi * u_azimuth};
}

UePlacement sample_ue(std::mt19937_64& rng, const ConstellationGeometry& geom) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u_radial = unit(rng);
    const double u_azimuth = unit(rng);
    return placement_from_unit(geom, u_radial, u_azimuth);
}

SightLine sight_line(const ConstellationGeometry& geom, const UePlacement& ue, double carrier_hz) {
    SightLine s;
    s.elevation_rad = elevation_from_central_angle(geom, ue.central_angle_rad);
    s.slant_range_km = slant_range_from_central_angle(geom, ue.central_angle_rad);
    s.delay_s = propagation_delay(s.slant_range_km);
    s.radial_velocity_km_s = radial_velocity(geom, ue);
    s.doppler_hz = doppler_shift(s.radial_velocity_km_s, carrier_hz);
    return s;
}

}  // namespace leotdd
