#include "leotdd/duplexing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace leotdd {

FrameScheme FrameScheme::fdd(double frame_length_s) {
    FrameScheme s;
    s.kind = SchemeKind::Fdd;
    s.frame_length_s = frame_length_s;
    return s;
}

FrameScheme FrameScheme::extended_frame(double frame_length_s) {
    FrameScheme s;
    s.kind = SchemeKind::TddEfs;
    s.frame_length_s = frame_length_s;
    return s;
}

FrameScheme FrameScheme::ue_specific_guard(double frame_length_s) {
    FrameScheme s;
    s.kind = SchemeKind::TddUsg;
    s.frame_length_s = frame_length_s;
    return s;
}

FrameScheme FrameScheme::partial_overlap(double sic_db, double frame_length_s) {
    FrameScheme s;
    s.kind = SchemeKind::TddPou;
    s.frame_length_s = frame_length_s;
    s.sic_db = sic_db;
    return s;
}

void FrameScheme::validate() const {
    if (!(dl_fraction > 0.0 && dl_fraction < 1.0)) throw std::invalid_argument("dl_fraction must lie in (0, 1)");
    if (!(frame_length_s > 0.0)) throw std::invalid_argument("frame_length must be positive");
    if (!(guard_slot_fraction >= 0.0 && guard_slot_fraction < 1.0))
        throw std::invalid_argument("guard_slot_fraction must lie in [0, 1)");
    if (!(fdd_guard_band_fraction >= 0.0 && fdd_guard_band_fraction < 1.0))
        throw std::invalid_argument("fdd_guard_band_fraction must lie in [0, 1)");
    if (!(sic_db >= 0.0)) throw std::invalid_argument("sic_db must be nonnegative");
}

std::string to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Fdd: return "fdd";
        case SchemeKind::TddEfs: return "tdd_efs";
        case SchemeKind::TddUsg: return "tdd_usg";
        case SchemeKind::TddPou: return "tdd_pou";
    }
    return "unknown";
}

std::string FrameScheme::id() const {
    if (kind != SchemeKind::TddPou) return to_string(kind);
    if (std::isinf(sic_db)) return "tdd_pou_infdb";
    char buf[48];
    std::snprintf(buf, sizeof buf, "tdd_pou_%gdb", sic_db);
    return buf;
}

std::string FrameScheme::label() const {
    switch (kind) {
        case SchemeKind::Fdd: return "FDD";
        case SchemeKind::TddEfs: return "TDD-EFS";
        case SchemeKind::TddUsg: return "TDD-USG";
        case SchemeKind::TddPou: break;
    }
    if (std::isinf(sic_db)) return "TDD-POU(inf dB)";
    char buf[48];
    std::snprintf(buf, sizeof buf, "TDD-POU(%g dB)", sic_db);
    return buf;
}

double required_guard_period(double max_delay_s) { return 2.0 * max_delay_s; }

double timing_advance(double delay_s) { return 2.0 * delay_s; }

OverlapWindow ue_overlap_for_advance(double advance_s, const FrameScheme& scheme) {
    OverlapWindow w;
    if (scheme.kind != SchemeKind::TddUsg && scheme.kind != SchemeKind::TddPou) return w;

    const double period = scheme.frame_length_s;
    const double dl_end = scheme.dl_fraction * period;
    double shift = std::fmod(advance_s, period);
    if (shift < 0.0) shift += period;
    if (shift == 0.0) return w;

    // UL window [dl_end - shift, period - shift) folded into [0, period).
    Interval tx[2];
    int n_tx = 0;
    const double tx_start = dl_end - shift;
    const double tx_end = period - shift;
    if (tx_start >= 0.0) {
        tx[n_tx++] = {tx_start, tx_end};
    } else {
        tx[n_tx++] = {0.0, tx_end};
        tx[n_tx++] = {tx_start + period, period};
    }

    for (int i = 0; i < n_tx; ++i) {
        const double lo = std::max(0.0, tx[i].start);
        const double hi = std::min(dl_end, tx[i].end);
        if (hi > lo) {
            w.intervals.push_back({lo, hi});
            w.total_length += hi - lo;
        }
    }
    std::sort(w.intervals.begin(), w.intervals.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    return w;
}

OverlapWindow ue_overlap(double delay_s, const FrameScheme& scheme) {
    return ue_overlap_for_advance(timing_advance(delay_s), scheme);
}

ResourceShare resource_share(const FrameScheme& scheme, const OverlapWindow& overlap) {
    ResourceShare r;
    const double overlap_ratio = std::clamp(overlap.total_length / scheme.frame_length_s, 0.0, 1.0);
    switch (scheme.kind) {
        case SchemeKind::Fdd:
            r.bandwidth_fraction = scheme.dl_fraction * (1.0 - scheme.fdd_guard_band_fraction);
            r.dl_time_fraction = 1.0;
            break;
        case SchemeKind::TddEfs:
            r.dl_time_fraction = scheme.dl_fraction * (1.0 - scheme.guard_slot_fraction);
            break;
        case SchemeKind::TddUsg:
            r.dl_time_fraction = scheme.dl_fraction * (1.0 - overlap_ratio);
            break;
        case SchemeKind::TddPou:
            r.dl_time_fraction = scheme.dl_fraction;
            r.overlap_fraction = overlap_ratio;
            break;
    }
    return r;
}

ResourceShare resource_share(const FrameScheme& scheme, double delay_s) {
    return resource_share(scheme, ue_overlap(delay_s, scheme));
}

double csi_age_offset(const FrameScheme& scheme, double delay_s) {
    return scheme.kind == SchemeKind::Fdd ? 2.0 * delay_s : delay_s;
}

double dl_throughput_density(const FrameScheme& scheme, const SightLine& sight, const LinkBudgetParams& link,
                             const CsiAgingModel& aging, double advance_s) {
    const ResourceShare share = resource_share(scheme, ue_overlap_for_advance(advance_s, scheme));
    const double age = csi_age_offset(scheme, sight.delay_s);
    const double window = share.dl_time_fraction * scheme.frame_length_s;

    double snr_db = cnr(link, sight.slant_range_km);
    if (scheme.kind == SchemeKind::Fdd) snr_db -= scheme.fdd_csi_backoff_db;

    const double clean_se = avg_se_over_window(db_to_linear(snr_db), aging, age, window);
    double overlapped_se = 0.0;
    if (share.overlap_fraction > 0.0) {
        const double si_db = self_interference_sinr(link, snr_db, scheme.sic_db);
        overlapped_se = avg_se_over_window(db_to_linear(si_db), aging, age, window);
    }
    return share.bandwidth_fraction *
           ((share.dl_time_fraction - share.overlap_fraction) * clean_se + share.overlap_fraction * overlapped_se);
}

double dl_throughput_density(const FrameScheme& scheme, const SightLine& sight, const LinkBudgetParams& link,
                             const CsiAgingModel& aging) {
    return dl_throughput_density(scheme, sight, link, aging, timing_advance(sight.delay_s));
}

std::optional<double> efficiency_ratio(const FrameScheme& scheme, const FrameScheme& baseline, const SightLine& sight,
                                       const LinkBudgetParams& link, const CsiAgingModel& aging, double advance_s) {
    const double denom = dl_throughput_density(baseline, sight, link, aging, advance_s);
    if (!(denom > 0.0)) return std::nullopt;
    return dl_throughput_density(scheme, sight, link, aging, advance_s) / denom;
}

std::optional<double> efficiency_ratio(const FrameScheme& scheme, const SightLine& sight,
                                       const LinkBudgetParams& link, const CsiAgingModel& aging) {
    if (scheme.kind == SchemeKind::Fdd) throw std::invalid_argument("efficiency_ratio needs a TDD scheme");
    FrameScheme baseline = FrameScheme::fdd();
    baseline.dl_fraction = scheme.dl_fraction;
    return efficiency_ratio(scheme, baseline, sight, link, aging, timing_advance(sight.delay_s));
}

}  // namespace leotdd
