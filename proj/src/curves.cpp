#include "citemetrics/curves.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "citemetrics/error.hpp"
#include "citemetrics/kernels.hpp"

namespace citemetrics {

namespace {

constexpr std::size_t kAnchorAge = 2;
constexpr std::size_t kMinVolumes = 3;

double median_of(std::vector<double>& xs) {
    const std::size_t mid = xs.size() / 2;
    std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end());
    const double upper = xs[mid];
    if (xs.size() % 2 == 1) return upper;
    const double lower = *std::max_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lower + upper) / 2.0;
}

}  // namespace

std::string_view to_string(CurveKind kind) noexcept {
    switch (kind) {
        case CurveKind::Raw: return "raw";
        case CurveKind::Cumulative: return "cumulative";
        case CurveKind::Standardized: return "standardized";
    }
    return "?";
}

std::string_view to_string(AnomalyReason reason) noexcept {
    switch (reason) {
        case AnomalyReason::SelfCitationSpike: return "SelfCitationSpike";
        case AnomalyReason::AccrualDeviation: return "AccrualDeviation";
    }
    return "?";
}

std::string_view to_string(JournalClass cls) noexcept {
    switch (cls) {
        case JournalClass::Hare: return "Hare";
        case JournalClass::Tortoise: return "Tortoise";
        case JournalClass::Intermediate: return "Intermediate";
    }
    return "?";
}

AccrualCurve accrual_curve(const CitationProfile& profile, Year pub_year, int max_age, CountBasis basis) {
    if (max_age < 0) throw std::invalid_argument("max_age must be non-negative");
    AccrualCurve curve{profile.journal, pub_year, CurveKind::Raw, std::vector<double>(static_cast<std::size_t>(max_age) + 1, 0.0), {}};
    auto it = profile.cells.lower_bound(CellKey{pub_year, pub_year});
    for (; it != profile.cells.end() && it->first.cited_year == pub_year; ++it) {
        const int age = it->first.citing_year - pub_year;
        if (age > max_age) break;
        const CellCounts& c = it->second;
        const std::int64_t n = basis == CountBasis::Total ? c.total : c.total - c.self;
        curve.values[static_cast<std::size_t>(age)] = static_cast<double>(n);
    }
    return curve;
}

AccrualCurve cumulative(const AccrualCurve& raw) {
    if (raw.kind != CurveKind::Raw) throw std::invalid_argument("cumulative() expects a raw curve");
    AccrualCurve out{raw.journal, raw.pub_year, CurveKind::Cumulative, std::vector<double>(raw.values.size()), raw.observations};
    kernels::prefix_sum(raw.values, out.values);
    return out;
}

double standardization_anchor(const AccrualCurve& cumulative_curve) {
    if (cumulative_curve.values.size() <= kAnchorAge) {
        throw MetricError(MetricErrorKind::DegenerateVolume, "curve not observed through age 2");
    }
    return cumulative_curve.values[kAnchorAge];
}

AccrualCurve standardize_to_age2(const AccrualCurve& cumulative_curve) {
    if (cumulative_curve.kind != CurveKind::Cumulative) {
        throw std::invalid_argument("standardize_to_age2() expects a cumulative curve");
    }
    const double anchor = standardization_anchor(cumulative_curve);
    if (!(anchor > 0.0)) {
        throw MetricError(MetricErrorKind::DegenerateVolume,
                          "no citations through age 2" +
                              (cumulative_curve.pub_year ? " for volume " + std::to_string(*cumulative_curve.pub_year) : std::string()));
    }
    AccrualCurve out{cumulative_curve.journal, cumulative_curve.pub_year, CurveKind::Standardized,
                     std::vector<double>(cumulative_curve.values.size()), cumulative_curve.observations};
    kernels::scale_ratio(cumulative_curve.values, 100.0, anchor, out.values);
    out.values[kAnchorAge] = 100.0;
    return out;
}

AccrualCurve mean_accrual_curve(std::span<const AccrualCurve> raw_curves, int horizon) {
    if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
    const std::size_t len = static_cast<std::size_t>(horizon) + 1;
    if (raw_curves.empty()) throw MetricError(MetricErrorKind::UnobservedAge, "no volume has been observed at age 0");

    std::set<Year> seen;
    for (const AccrualCurve& c : raw_curves) {
        if (c.kind != CurveKind::Raw) throw std::invalid_argument("mean_accrual_curve() expects raw curves");
        if (c.pub_year && !seen.insert(*c.pub_year).second) {
            throw std::invalid_argument("duplicate volume " + std::to_string(*c.pub_year));
        }
    }

    std::vector<double> sums(len, 0.0);
    std::vector<double> counts(len, 0.0);
    const std::vector<double> ones(len, 1.0);
    for (const AccrualCurve& c : raw_curves) {
        const std::size_t n = std::min(len, c.values.size());
        kernels::add_into(std::span(sums).first(n), std::span(c.values).first(n));
        kernels::add_into(std::span(counts).first(n), std::span(ones).first(n));
    }
    for (std::size_t a = 0; a < len; ++a) {
        if (counts[a] == 0.0) {
            throw MetricError(MetricErrorKind::UnobservedAge, "no volume has been observed at age " + std::to_string(a));
        }
    }

    AccrualCurve mean{raw_curves.front().journal, std::nullopt, CurveKind::Raw, std::vector<double>(len), {}};
    kernels::divide(sums, counts, mean.values);
    mean.observations.reserve(len);
    for (const double n : counts) mean.observations.push_back(static_cast<int>(n));
    return mean;
}

std::vector<AccrualCurve> volume_curves(const CitationProfile& profile, Year observed_through, int horizon,
                                        CountBasis basis) {
    std::vector<AccrualCurve> curves;
    for (const Year year : profile.cited_years()) {
        if (year > observed_through) break;
        curves.push_back(accrual_curve(profile, year, std::min(horizon, observed_through - year), basis));
    }
    return curves;
}

// ---------------------------------------------------------------------------

void AnomalyThresholds::validate() const {
    if (!(self_rate > 0.0 && self_rate <= 1.0)) throw ConfigError("self-citation threshold must be in (0, 1]");
    if (!(deviation_pp > 0.0)) throw ConfigError("deviation threshold must be positive");
}

EvidenceSet volume_evidence(const CitationProfile& profile, Year observed_through, int horizon, CountBasis basis) {
    EvidenceSet set;
    for (const AccrualCurve& raw : volume_curves(profile, observed_through, horizon, basis)) {
        if (raw.values.size() <= kAnchorAge) continue;
        const AccrualCurve cum = cumulative(raw);
        if (!(standardization_anchor(cum) > 0.0)) {
            set.degenerate.push_back(*raw.pub_year);
            continue;
        }
        VolumeEvidence v{*raw.pub_year, standardize_to_age2(cum), {}};
        auto it = profile.cells.lower_bound(CellKey{v.pub_year, v.pub_year});
        for (; it != profile.cells.end() && it->first.cited_year == v.pub_year; ++it) {
            if (it->first.citing_year > observed_through) break;
            v.self_tallies.push_back(SelfTally{it->first.citing_year, it->second.self, it->second.total});
        }
        set.volumes.push_back(std::move(v));
    }
    return set;
}

std::vector<AnomalyFinding> detect_anomalous_volumes(std::span<const VolumeEvidence> volumes,
                                                     const AnomalyThresholds& thresholds) {
    thresholds.validate();
    if (volumes.size() < kMinVolumes) {
        throw MetricError(MetricErrorKind::TooFewVolumes, "anomaly screening needs at least 3 volumes");
    }

    std::size_t longest = 0;
    for (const VolumeEvidence& v : volumes) longest = std::max(longest, v.standardized.values.size());

    std::vector<double> median(longest, 0.0);
    std::vector<bool> comparable(longest, false);
    std::vector<double> column;
    for (std::size_t a = 0; a < longest; ++a) {
        column.clear();
        for (const VolumeEvidence& v : volumes) {
            if (a < v.standardized.values.size()) column.push_back(v.standardized.values[a]);
        }
        if (column.size() >= kMinVolumes) {
            median[a] = median_of(column);
            comparable[a] = true;
        }
    }

    std::vector<AnomalyFinding> findings;
    for (const VolumeEvidence& v : volumes) {
        for (const SelfTally& t : v.self_tallies) {
            if (t.total <= 0) continue;
            const double rate = static_cast<double>(t.self) / static_cast<double>(t.total);
            if (rate >= thresholds.self_rate) {
                findings.push_back(AnomalyFinding{v.standardized.journal, v.pub_year, t.citing_year - v.pub_year,
                                                  rate * 100.0, AnomalyReason::SelfCitationSpike, t.self, t.total});
            }
        }
        for (std::size_t a = 0; a < v.standardized.values.size(); ++a) {
            if (!comparable[a]) continue;
            const double deviation = v.standardized.values[a] - median[a];
            if (std::abs(deviation) >= thresholds.deviation_pp) {
                findings.push_back(AnomalyFinding{v.standardized.journal, v.pub_year, static_cast<int>(a), deviation,
                                                  AnomalyReason::AccrualDeviation, 0, 0});
            }
        }
    }
    std::stable_sort(findings.begin(), findings.end(), [](const AnomalyFinding& x, const AnomalyFinding& y) {
        if (x.pub_year != y.pub_year) return x.pub_year < y.pub_year;
        if (x.reason != y.reason) return x.reason < y.reason;
        return x.age < y.age;
    });
    return findings;
}

// ---------------------------------------------------------------------------

void ClassThresholds::validate() const {
    if (!(hare > tortoise)) throw ConfigError("hare threshold must exceed tortoise threshold");
}

JournalClass classify_journal(double coverage, const ClassThresholds& thresholds) {
    thresholds.validate();
    if (coverage >= thresholds.hare) return JournalClass::Hare;
    if (coverage <= thresholds.tortoise) return JournalClass::Tortoise;
    return JournalClass::Intermediate;
}

}  // namespace citemetrics
