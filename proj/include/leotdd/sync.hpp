#pragma once

#include <random>

#include "leotdd/geometry.hpp"

namespace leotdd {

enum class ErrorDistribution { Uniform, TruncatedGaussian };

/// GNSS + ephemeris error budget. Ephemeris error is folded into these bounds.
struct GnssErrorModel {
    double timing_error_bound_s = 0.13e-6;
    double frequency_error_bound_ppm = 0.1;
    ErrorDistribution distribution = ErrorDistribution::Uniform;

    void validate() const;
};

/// Terrestrial TDD requirement figures. These are external assumptions; the
/// defaults are 3 us timing and 0.05 ppm at the carrier.
struct SyncThresholds {
    double timing_s = 3e-6;
    double frequency_ppm = 0.05;
};

struct TimingAdvanceEstimate {
    double estimate_s = 0.0;
    double residual_s = 0.0;
};

struct SyncBudget {
    double residual_timing_s = 0.0;
    double residual_frequency_hz = 0.0;
    double timing_threshold_s = 3e-6;
    double frequency_threshold_hz = 1e3;
};

struct SyncReport {
    bool timing_pass = true;
    bool frequency_pass = true;
    double timing_margin_s = 0.0;
    double frequency_margin_hz = 0.0;

    bool pass() const { return timing_pass && frequency_pass; }
};

/// Signed error in [-bound, bound] from the model's distribution.
double draw_bounded_error(std::mt19937_64& rng, double bound, ErrorDistribution distribution);

TimingAdvanceEstimate estimate_timing_advance(const ConstellationGeometry& geom, const UePlacement& ue,
                                              const GnssErrorModel& err, std::mt19937_64& rng);

/// Residual carrier offset left after ephemeris-based pre-compensation, in Hz.
double doppler_precompensation(const ConstellationGeometry& geom, const UePlacement& ue, double carrier_hz,
                               const GnssErrorModel& err, std::mt19937_64& rng);

SyncReport check_requirements(const SyncBudget& budget);

SyncBudget make_budget(double residual_timing_s, double residual_frequency_hz, const SyncThresholds& thresholds,
                       double carrier_hz);

/// Listening window the satellite needs to hear every UE during random access.
double random_access_window(const ConstellationGeometry& geom);

}  // namespace leotdd
