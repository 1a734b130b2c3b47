#include "leotdd/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "leotdd/geometry.hpp"

namespace leotdd {

namespace {

constexpr double kMinUsableSinr = 1e-3;  // -30 dB

}  // namespace

void LinkBudgetParams::validate() const {
    if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier must be positive");
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    if (!(ue_noise_figure_db >= 0.0)) throw std::invalid_argument("noise figure must be nonnegative");
}

void CsiAgingModel::validate() const {
    if (!(doppler_spread_hz >= 0.0)) throw std::invalid_argument("doppler_spread must be nonnegative");
    if (integration_steps < 2) throw std::invalid_argument("integration_steps must be at least 2");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double fspl(double distance_km, double carrier_ghz) {
    if (!(distance_km > 0.0) || !(carrier_ghz > 0.0))
        throw std::domain_error("fspl requires positive distance and carrier");
    return 92.45 + 20.0 * std::log10(distance_km) + 20.0 * std::log10(carrier_ghz);
}

double cnr(const LinkBudgetParams& params, double distance_km) {
    const double eirp_dbw = params.eirp_density_dbw_per_mhz + 10.0 * std::log10(params.bandwidth_hz / 1e6);
    const double noise_dbw_per_k = kBoltzmannDbw + 10.0 * std::log10(params.bandwidth_hz);
    return eirp_dbw + params.ue_g_over_t_db_per_k - fspl(distance_km, params.carrier_hz / 1e9) - noise_dbw_per_k;
}

double noise_floor_dbm(const LinkBudgetParams& params) {
    return kThermalNoiseDbmPerHz + 10.0 * std::log10(params.bandwidth_hz) + params.ue_noise_figure_db;
}

double jakes_correlation(const CsiAgingModel& model, double age_s) {
    const double x = 2.0 * kPi * model.doppler_spread_hz * age_s;
    if (x == 0.0) return 1.0;
    return std::cyl_bessel_j(0.0, x);
}

double effective_sinr(double snr, double rho) {
    const double r2 = rho * rho;
    return r2 * snr / (1.0 + (1.0 - r2) * snr);
}

double spectral_efficiency(double sinr) {
    if (!(sinr >= kMinUsableSinr)) return 0.0;
    return std::log2(1.0 + sinr);
}

double avg_se_over_window(double snr, const CsiAgingModel& model, double age_offset_s, double window_s) {
    auto se_at = [&](double age) { return spectral_efficiency(effective_sinr(snr, jakes_correlation(model, age))); };
    if (model.doppler_spread_hz == 0.0) return spectral_efficiency(snr);
    if (window_s <= 0.0) return se_at(age_offset_s);

    const int n = model.integration_steps;
    const double h = window_s / n;
    double sum = 0.5 * (se_at(age_offset_s) + se_at(age_offset_s + window_s));
    for (int i = 1; i < n; ++i) sum += se_at(age_offset_s + i * h);
    return sum / n;
}

double self_interference_sinr(const LinkBudgetParams& params, double clean_snr_db, double sic_db) {
    if (std::isinf(sic_db) && sic_db > 0.0) return clean_snr_db;
    const double noise_mw = db_to_linear(noise_floor_dbm(params));
    const double signal_mw = db_to_linear(clean_snr_db) * noise_mw;
    const double residual_mw = db_to_linear(params.ue_tx_power_dbm - sic_db);
    return linear_to_db(signal_mw / (noise_mw + residual_mw));
}

LinkQuality link_quality(const LinkBudgetParams& params, double distance_km, double sic_db) {
    LinkQuality q;
    q.snr_db = cnr(params, distance_km);
    q.si_sinr_db = self_interference_sinr(params, q.snr_db, sic_db);
    q.noise_floor_dbm = noise_floor_dbm(params);
    return q;
}

}  // namespace leotdd
