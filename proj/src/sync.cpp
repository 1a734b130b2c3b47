#include "leotdd/sync.hpp"

#include <cmath>
#include <stdexcept>

#include "leotdd/duplexing.hpp"

namespace leotdd {

void GnssErrorModel::validate() const {
    if (!(timing_error_bound_s >= 0.0)) throw std::invalid_argument("timing_error_bound must be nonnegative");
    if (!(frequency_error_bound_ppm >= 0.0)) throw std::invalid_argument("frequency_error_bound must be nonnegative");
}

double draw_bounded_error(std::mt19937_64& rng, double bound, ErrorDistribution distribution) {
    if (bound == 0.0) return 0.0;
    if (distribution == ErrorDistribution::Uniform) {
        std::uniform_real_distribution<double> d(-bound, bound);
        return d(rng);
    }
    // sigma = bound / 3, redrawn outside the bound
    std::normal_distribution<double> d(0.0, bound / 3.0);
    for (;;) {
        const double e = d(rng);
        if (std::abs(e) <= bound) return e;
    }
}

TimingAdvanceEstimate estimate_timing_advance(const ConstellationGeometry& geom, const UePlacement& ue,
                                              const GnssErrorModel& err, std::mt19937_64& rng) {
    const double truth = timing_advance(propagation_delay(slant_range_from_central_angle(geom, ue.central_angle_rad)));
    const double e = draw_bounded_error(rng, err.timing_error_bound_s, err.distribution);
    return {truth + e, std::abs(e)};
}

double doppler_precompensation(const ConstellationGeometry& geom, const UePlacement& ue, double carrier_hz,
                               const GnssErrorModel& err, std::mt19937_64& rng) {
    if (!(carrier_hz > 0.0)) throw std::domain_error("carrier must be positive");
    const double truth = doppler_shift(radial_velocity(geom, ue), carrier_hz);
    const double eps_ppm = draw_bounded_error(rng, err.frequency_error_bound_ppm, err.distribution);
    const double estimate = truth + carrier_hz * eps_ppm * 1e-6;
    return std::abs(truth - estimate);
}

SyncReport check_requirements(const SyncBudget& budget) {
    SyncReport r;
    r.timing_margin_s = budget.timing_threshold_s - budget.residual_timing_s;
    r.frequency_margin_hz = budget.frequency_threshold_hz - budget.residual_frequency_hz;
    r.timing_pass = r.timing_margin_s >= 0.0;
    r.frequency_pass = r.frequency_margin_hz >= 0.0;
    return r;
}

SyncBudget make_budget(double residual_timing_s, double residual_frequency_hz, const SyncThresholds& thresholds,
                       double carrier_hz) {
    return {residual_timing_s, residual_frequency_hz, thresholds.timing_s, thresholds.frequency_ppm * 1e-6 * carrier_hz};
}

double random_access_window(const ConstellationGeometry& geom) { return differential_delay(geom); }

}  // namespace leotdd
