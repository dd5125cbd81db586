#pragma once

// Scalar journal indicators: impact factor, immediacy, cited half-life,
// window coverage and the coverage-based adjustment of the impact factor.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citemetrics/curves.hpp"
#include "citemetrics/ledger.hpp"

namespace citemetrics {

// Which citation ages an impact factor samples, how far the reference
// total extends, and which quantile the adjusted impact should represent.
struct WindowPolicy {
    std::vector<int> window_ages{1, 2};
    int horizon = 20;
    double target_quantile = 0.5;

    void validate() const;  // throws ConfigError
};

// Exact citations / items quotient.
struct Ratio {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    double value() const noexcept { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

// Citations received in `eval_year` by volumes published `age` years
// earlier, summed over `ages`.
std::int64_t window_citations(const CitationProfile& profile, Year eval_year, std::span<const int> ages);

// Sum over the window of citations in eval_year to volume eval_year - age,
// divided by the summed citeable items of those volumes. The default window
// {1, 2} is the classical two-year impact factor. Throws
// MetricError(MissingDenominator) when any volume lacks an item count.
Ratio impact_factor(const CitationProfile& profile, const PublicationCounts& pubs, Year eval_year,
                    std::span<const int> window_ages = {});

// Same-year citations over same-year citeable items.
Ratio immediacy_index(const CitationProfile& profile, const PublicationCounts& pubs, Year eval_year);

// c[a] = citations received in eval_year by the volume of age a, for
// a = 0 .. eval_year - first cited year (empty if nothing was cited yet).
std::vector<std::int64_t> citing_year_distribution(const CitationProfile& profile, Year eval_year);

// Age at which `quantile` of the counts is reached, with each age-year's
// citations spread uniformly over [a, a + 1). Empty when the counts sum to 0.
std::optional<double> half_life_from_counts(std::span<const std::int64_t> counts, double quantile = 0.5);

std::optional<double> cited_half_life(const CitationProfile& profile, Year eval_year, double quantile = 0.5);

// Half-life as the citation reports print it: values above 10 collapse to
// ">10"; others are shown to one decimal.
struct JcrHalfLife {
    double value = 0.0;
    bool over_ten = false;

    std::string to_string() const;
    bool operator==(const JcrHalfLife&) const = default;
};

JcrHalfLife jcr_truncate(double half_life_exact);

// Share of the horizon total that falls inside the window ages. Throws
// MetricError(ZeroWindowCitations) when the horizon total is zero.
double window_coverage(const AccrualCurve& mean_curve, const WindowPolicy& policy = {});

// target_quantile / coverage. Throws MetricError(ZeroCoverage) for 0.
double scaling_factor(double coverage, double target_quantile = 0.5);

double adjusted_impact(double jif, double scaling);

// Each value divided by the arithmetic mean of its field's values.
std::map<std::string, double, JournalLess> normalize_within_field(
    const std::map<std::string, double, JournalLess>& values,
    const std::map<std::string, std::string, JournalLess>& field_of);

// Years from the earliest cited volume to eval_year, both inclusive.
int journal_age(const CitationProfile& profile, Year eval_year);

enum class Flag : unsigned {
    HalfLifeUnreliable = 1u << 0,
    MissingDenominator = 1u << 1,
    ZeroWindowCitations = 1u << 2,
};

std::string_view to_string(Flag flag) noexcept;

class FlagSet {
public:
    static constexpr Flag kAll[] = {Flag::HalfLifeUnreliable, Flag::MissingDenominator, Flag::ZeroWindowCitations};

    FlagSet() = default;
    FlagSet(std::initializer_list<Flag> flags) {
        for (Flag f : flags) insert(f);
    }

    void insert(Flag f) noexcept { bits_ |= static_cast<unsigned>(f); }
    bool contains(Flag f) const noexcept { return (bits_ & static_cast<unsigned>(f)) != 0; }
    bool empty() const noexcept { return bits_ == 0; }
    FlagSet& operator|=(FlagSet other) noexcept {
        bits_ |= other.bits_;
        return *this;
    }
    std::vector<std::string_view> names() const;

    bool operator==(const FlagSet&) const = default;

private:
    unsigned bits_ = 0;
};

// HalfLifeUnreliable when the journal is younger than twice its half-life.
FlagSet reliability_flags(const CitationProfile& profile, Year eval_year, std::optional<double> half_life_exact);

// One decimal place, halves rounded away from zero.
double round_report(double value);

struct IndicatorReport {
    std::string journal;
    Year eval_year = 0;
    std::optional<double> jif;
    std::optional<double> immediacy;
    std::optional<double> half_life_exact;
    std::optional<JcrHalfLife> half_life_jcr;
    std::optional<double> coverage;
    std::optional<double> scaling_factor;
    std::optional<double> adjusted_jif;
    FlagSet flags;
    std::optional<JournalClass> journal_class;

    // Exact operands behind jif and immediacy, kept even when a denominator
    // is missing.
    std::int64_t jif_citations = 0;
    std::int64_t immediacy_citations = 0;
};

}  // namespace citemetrics
