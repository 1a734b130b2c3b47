#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "leotdd/channel.hpp"
#include "leotdd/geometry.hpp"

namespace leotdd {

enum class SchemeKind { Fdd, TddEfs, TddUsg, TddPou };

/// One duplexing configuration. Every frame carries a contiguous DL span at
/// its head and the UL span at its tail; FDD instead splits the band.
struct FrameScheme {
    SchemeKind kind = SchemeKind::Fdd;
    double frame_length_s = 1e-3;
    double dl_fraction = 0.7;
    double guard_slot_fraction = 1.0 / 14.0;      // TDD_EFS
    double fdd_guard_band_fraction = 0.05;        // FDD
    double fdd_csi_backoff_db = 0.0;              // FDD
    double sic_db = std::numeric_limits<double>::infinity();  // TDD_POU

    static FrameScheme fdd(double frame_length_s = 1e-3);
    static FrameScheme extended_frame(double frame_length_s = 182e-3);
    static FrameScheme ue_specific_guard(double frame_length_s = 1e-3);
    static FrameScheme partial_overlap(double sic_db, double frame_length_s = 1e-3);

    void validate() const;

    /// Stable identifier used for CSV columns, e.g. "tdd_pou_130db".
    std::string id() const;
    /// Human label, e.g. "TDD-POU(130 dB)".
    std::string label() const;
};

std::string to_string(SchemeKind kind);

struct Interval {
    double start = 0.0;
    double end = 0.0;
    double length() const { return end - start; }
};

/// Part of the UE's DL reception window that coincides with its own UL
/// transmission, in UE-local frame time [0, T).
struct OverlapWindow {
    std::vector<Interval> intervals;
    double total_length = 0.0;
};

struct ResourceShare {
    double bandwidth_fraction = 1.0;
    double dl_time_fraction = 1.0;
    double overlap_fraction = 0.0;
};

double required_guard_period(double max_delay_s);

double timing_advance(double delay_s);

/// Overlap for a UE that advances its UL by `advance_s` against the DL
/// timing it observes. Only TDD_USG and TDD_POU have a defined overlap;
/// other kinds return an empty window.
OverlapWindow ue_overlap_for_advance(double advance_s, const FrameScheme& scheme);

OverlapWindow ue_overlap(double delay_s, const FrameScheme& scheme);

ResourceShare resource_share(const FrameScheme& scheme, const OverlapWindow& overlap);

ResourceShare resource_share(const FrameScheme& scheme, double delay_s);

/// CSI age at the start of DL use: one-way delay with reciprocity, round
/// trip with FDD feedback.
double csi_age_offset(const FrameScheme& scheme, double delay_s);

/// DL bit/s/Hz normalised by the total time-frequency resource.
double dl_throughput_density(const FrameScheme& scheme, const SightLine& sight, const LinkBudgetParams& link,
                             const CsiAgingModel& aging, double advance_s);

double dl_throughput_density(const FrameScheme& scheme, const SightLine& sight, const LinkBudgetParams& link,
                             const CsiAgingModel& aging);

/// Throughput density of `scheme` over that of `baseline`; nullopt when the
/// baseline carries no throughput.
std::optional<double> efficiency_ratio(const FrameScheme& scheme, const FrameScheme& baseline, const SightLine& sight,
                                       const LinkBudgetParams& link, const CsiAgingModel& aging, double advance_s);

std::optional<double> efficiency_ratio(const FrameScheme& scheme, const SightLine& sight,
                                       const LinkBudgetParams& link, const CsiAgingModel& aging);

}  // namespace leotdd
