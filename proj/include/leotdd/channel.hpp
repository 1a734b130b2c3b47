#pragma once

namespace leotdd {

inline constexpr double kBoltzmannDbw = -228.6;  // dBW/K/Hz
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

/// Downlink budget seen by one UE. EIRP is a spectral density, so the clean
/// per-Hz SNR does not depend on how much bandwidth a scheme occupies.
struct LinkBudgetParams {
    double eirp_density_dbw_per_mhz = 4.0;
    double ue_g_over_t_db_per_k = 15.9;
    double ue_noise_figure_db = 7.0;
    double ue_tx_power_dbm = 56.0;  // reference power for residual self-interference
    double carrier_hz = 20e9;
    double bandwidth_hz = 400e6;

    void validate() const;
};

/// Temporal decorrelation of the DL channel after CSI acquisition.
struct CsiAgingModel {
    double doppler_spread_hz = 9.0;  // residual after Doppler-shift compensation
    int integration_steps = 128;

    void validate() const;
};

struct LinkQuality {
    double snr_db = 0.0;
    double si_sinr_db = 0.0;
    double noise_floor_dbm = 0.0;
};

/// Free-space path loss in dB. Throws std::domain_error for nonpositive inputs.
double fspl(double distance_km, double carrier_ghz);

double cnr(const LinkBudgetParams& params, double distance_km);

double noise_floor_dbm(const LinkBudgetParams& params);

double jakes_correlation(const CsiAgingModel& model, double age_s);

/// Mismatched CSI treated as self-noise: rho^2 snr / (1 + (1 - rho^2) snr).
double effective_sinr(double snr, double rho);

/// Shannon bound in bit/s/Hz; SINR below -30 dB is clamped to zero.
double spectral_efficiency(double sinr);

/// Time-averaged spectral efficiency over [age_offset, age_offset + window],
/// composite trapezoid rule with model.integration_steps panels.
double avg_se_over_window(double snr, const CsiAgingModel& model, double age_offset_s, double window_s);

/// DL SINR in dB while the UE's own UL transmission leaks in after `sic_db`
/// of cancellation. An infinite `sic_db` returns `clean_snr_db`.
double self_interference_sinr(const LinkBudgetParams& params, double clean_snr_db, double sic_db);

LinkQuality link_quality(const LinkBudgetParams& params, double distance_km, double sic_db);

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace leotdd
