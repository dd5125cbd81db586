#pragma once

// Per-volume citation accrual curves: extraction from a profile, cumulative
// and standardized forms, ragged averaging across volumes, anomaly screening,
// and Hare/Tortoise classification.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citemetrics/ledger.hpp"

namespace citemetrics {

enum class CurveKind { Raw, Cumulative, Standardized };
enum class CountBasis { Total, NonSelf };

// Citations by age (years since publication), index 0 = publication year.
struct AccrualCurve {
    std::string journal;
    std::optional<Year> pub_year;  // empty for averaged curves
    CurveKind kind = CurveKind::Raw;
    std::vector<double> values;
    std::vector<int> observations;  // per-age volume counts, averaged curves only

    bool operator==(const AccrualCurve&) const = default;
};

std::string_view to_string(CurveKind kind) noexcept;

AccrualCurve accrual_curve(const CitationProfile& profile, Year pub_year, int max_age,
                           CountBasis basis = CountBasis::Total);

AccrualCurve cumulative(const AccrualCurve& raw);

// The value that maps to 100%: cumulative citations through age 2, ages
// 0, 1 and 2 all included.
double standardization_anchor(const AccrualCurve& cumulative_curve);

// Throws MetricError(DegenerateVolume) when the anchor is zero.
AccrualCurve standardize_to_age2(const AccrualCurve& cumulative_curve);

// Per-age mean over the volumes that have observed that age. Each input
// curve's length marks how far it has been observed. Throws
// MetricError(UnobservedAge) if some age <= horizon has no observations.
AccrualCurve mean_accrual_curve(std::span<const AccrualCurve> raw_curves, int horizon);

// Raw curves for every volume of `profile` published no later than
// `observed_through`, each cut at min(horizon, observed_through - pub_year).
std::vector<AccrualCurve> volume_curves(const CitationProfile& profile, Year observed_through, int horizon,
                                        CountBasis basis = CountBasis::Total);

// ---------------------------------------------------------------------------
// Anomalies

struct AnomalyThresholds {
    double self_rate = 0.50;
    double deviation_pp = 25.0;

    void validate() const;  // throws ConfigError
};

enum class AnomalyReason { SelfCitationSpike, AccrualDeviation };

std::string_view to_string(AnomalyReason reason) noexcept;

struct AnomalyFinding {
    std::string journal;
    Year pub_year = 0;
    int age = 0;
    // Percentage points: the self-rate for SelfCitationSpike, the signed
    // distance from the median standardized curve for AccrualDeviation.
    double deviation = 0.0;
    AnomalyReason reason = AnomalyReason::AccrualDeviation;
    // Self/total counts behind a SelfCitationSpike.
    std::int64_t self = 0;
    std::int64_t total = 0;
};

struct SelfTally {
    Year citing_year = 0;
    std::int64_t self = 0;
    std::int64_t total = 0;
};

struct VolumeEvidence {
    Year pub_year = 0;
    AccrualCurve standardized;
    std::vector<SelfTally> self_tallies;
};

struct EvidenceSet {
    std::vector<VolumeEvidence> volumes;
    std::vector<Year> degenerate;  // volumes with no citations through age 2
};

// Standardized curves (from `basis` counts) and self tallies (always from
// the profile's self column) for every volume observed through age 2.
EvidenceSet volume_evidence(const CitationProfile& profile, Year observed_through, int horizon,
                            CountBasis basis = CountBasis::Total);

// Throws MetricError(TooFewVolumes) with fewer than three volumes.
// AccrualDeviation is only tested at ages observed by at least three volumes.
std::vector<AnomalyFinding> detect_anomalous_volumes(std::span<const VolumeEvidence> volumes,
                                                     const AnomalyThresholds& thresholds = {});

// ---------------------------------------------------------------------------
// Classification

enum class JournalClass { Hare, Tortoise, Intermediate };

std::string_view to_string(JournalClass cls) noexcept;

struct ClassThresholds {
    double hare = 0.25;
    double tortoise = 0.15;

    void validate() const;  // throws ConfigError unless hare > tortoise
};

JournalClass classify_journal(double coverage, const ClassThresholds& thresholds = {});

}  // namespace citemetrics
