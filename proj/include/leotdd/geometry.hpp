#pragma once

#include <random>

namespace leotdd {

inline constexpr double kSpeedOfLightKmPerS = 299792.458;
inline constexpr double kPi = 3.14159265358979323846;

/// Single satellite on a circular orbit over a spherical Earth.
///
/// All lengths are in km, angles in radians. The minimum elevation bounds the
/// coverage cap; everything that depends on UE position is derived from it.
struct ConstellationGeometry {
    double earth_radius_km = 6371.0;
    double gravitational_parameter = 398600.4418;  // km^3/s^2
    double altitude_km = 600.0;
    double min_elevation_rad = 10.0 * kPi / 180.0;

    /// Throws std::invalid_argument if a field violates its range.
    void validate() const;

    double orbit_radius_km() const { return earth_radius_km + altitude_km; }
};

/// UE position on the coverage cap, relative to the sub-satellite point.
/// Azimuth is measured from the satellite ground-track direction.
struct UePlacement {
    double central_angle_rad = 0.0;
    double azimuth_rad = 0.0;
};

/// One UE's line of sight to the satellite.
struct SightLine {
    double elevation_rad = 0.0;
    double slant_range_km = 0.0;
    double delay_s = 0.0;
    double radial_velocity_km_s = 0.0;  // positive = closing
    double doppler_hz = 0.0;
};

double orbital_velocity(const ConstellationGeometry& geom);

/// Throws std::domain_error outside [min_elevation, pi/2].
double slant_range_from_elevation(const ConstellationGeometry& geom, double elevation_rad);

/// Throws std::domain_error outside [0, coverage_central_angle].
double slant_range_from_central_angle(const ConstellationGeometry& geom, double central_angle_rad);

double elevation_from_central_angle(const ConstellationGeometry& geom, double central_angle_rad);

/// Earth-central half-angle of the coverage cap.
double coverage_central_angle(const ConstellationGeometry& geom);

/// Great-circle radius of the coverage cap in km.
double coverage_radius(const ConstellationGeometry& geom);

double max_slant_range(const ConstellationGeometry& geom);

double propagation_delay(double slant_range_km);

/// Spread of one-way delays between the nadir UE and a cap-edge UE.
double differential_delay(const ConstellationGeometry& geom);

double radial_velocity(const ConstellationGeometry& geom, const UePlacement& ue);

double doppler_shift(double radial_velocity_km_s, double carrier_hz);

/// Area-uniform placement on the cap from two unit-interval variates.
UePlacement placement_from_unit(const ConstellationGeometry& geom, double u_radial, double u_azimuth);

UePlacement sample_ue(std::mt19937_64& rng, const ConstellationGeometry& geom);

SightLine sight_line(const ConstellationGeometry& geom, const UePlacement& ue, double carrier_hz);

}  // namespace leotdd
