#include "citemetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "citemetrics/error.hpp"
#include "citemetrics/kernels.hpp"

namespace citemetrics {

namespace {

constexpr int kClassicWindow[] = {1, 2};

std::int64_t citations_between(const CitationProfile& profile, Year cited_year, Year citing_year) {
    const CellCounts* cell = profile.find(cited_year, citing_year);
    return cell ? cell->total : 0;
}

}  // namespace

void WindowPolicy::validate() const {
    if (window_ages.empty()) throw ConfigError("window must contain at least one age");
    const std::set<int> distinct(window_ages.begin(), window_ages.end());
    if (distinct.size() != window_ages.size()) throw ConfigError("window ages must be distinct");
    if (*distinct.begin() < 0) throw ConfigError("window ages must be non-negative");
    if (horizon < *distinct.rbegin()) throw ConfigError("horizon must be at least the largest window age");
    if (!(target_quantile > 0.0 && target_quantile <= 1.0)) throw ConfigError("target quantile must be in (0, 1]");
}

std::int64_t window_citations(const CitationProfile& profile, Year eval_year, std::span<const int> ages) {
    std::int64_t sum = 0;
    for (const int age : ages) sum += citations_between(profile, eval_year - age, eval_year);
    return sum;
}

Ratio impact_factor(const CitationProfile& profile, const PublicationCounts& pubs, Year eval_year,
                    std::span<const int> window_ages) {
    if (window_ages.empty()) window_ages = kClassicWindow;
    std::int64_t items = 0;
    for (const int age : window_ages) {
        const auto n = pubs.find(profile.journal, eval_year - age);
        if (!n) {
            throw MetricError(MetricErrorKind::MissingDenominator,
                              "no citeable-item count for " + profile.journal + " " + std::to_string(eval_year - age));
        }
        items += *n;
    }
    return Ratio{window_citations(profile, eval_year, window_ages), items};
}

Ratio immediacy_index(const CitationProfile& profile, const PublicationCounts& pubs, Year eval_year) {
    const auto items = pubs.find(profile.journal, eval_year);
    if (!items) {
        throw MetricError(MetricErrorKind::MissingDenominator,
                          "no citeable-item count for " + profile.journal + " " + std::to_string(eval_year));
    }
    return Ratio{citations_between(profile, eval_year, eval_year), *items};
}

std::vector<std::int64_t> citing_year_distribution(const CitationProfile& profile, Year eval_year) {
    const auto first = profile.first_cited_year();
    if (!first || *first > eval_year) return {};
    std::vector<std::int64_t> counts(static_cast<std::size_t>(eval_year - *first) + 1, 0);
    for (const auto& [key, cell] : profile.cells) {
        if (key.citing_year == eval_year) counts[static_cast<std::size_t>(eval_year - key.cited_year)] += cell.total;
    }
    return counts;
}

std::optional<double> half_life_from_counts(std::span<const std::int64_t> counts, double quantile) {
    if (!(quantile > 0.0 && quantile <= 1.0)) throw std::invalid_argument("quantile must be in (0, 1]");
    std::int64_t total = 0;
    for (const std::int64_t c : counts) total += c;
    if (total == 0) return std::nullopt;

    const double target = quantile * static_cast<double>(total);
    double before = 0.0;
    for (std::size_t age = 0; age < counts.size(); ++age) {
        const double here = static_cast<double>(counts[age]);
        if (before + here >= target) return static_cast<double>(age) + (target - before) / here;
        before += here;
    }
    // Only reachable through rounding of quantile * total at q = 1.
    return static_cast<double>(counts.size());
}

std::optional<double> cited_half_life(const CitationProfile& profile, Year eval_year, double quantile) {
    return half_life_from_counts(citing_year_distribution(profile, eval_year), quantile);
}

std::string JcrHalfLife::to_string() const {
    if (over_ten) return ">10";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", round_report(value));
    return buf;
}

JcrHalfLife jcr_truncate(double half_life_exact) {
    if (!(half_life_exact >= 0.0)) throw std::invalid_argument("half-life must be a non-negative number");
    if (half_life_exact > 10.0) return JcrHalfLife{10.0, true};
    return JcrHalfLife{half_life_exact, false};
}

double window_coverage(const AccrualCurve& mean_curve, const WindowPolicy& policy) {
    policy.validate();
    const std::size_t len = static_cast<std::size_t>(policy.horizon) + 1;
    if (mean_curve.values.size() < len) {
        throw std::invalid_argument("curve does not reach the horizon of " + std::to_string(policy.horizon) + " years");
    }
    const std::span<const double> span(mean_curve.values.data(), len);
    const double total = kernels::sum(span);
    if (!(total > 0.0)) {
        throw MetricError(MetricErrorKind::ZeroWindowCitations, "no citations within the " + std::to_string(policy.horizon) + "-year horizon");
    }
    double window = 0.0;
    for (const int age : policy.window_ages) window += span[static_cast<std::size_t>(age)];
    return std::clamp(window / total, 0.0, 1.0);
}

double scaling_factor(double coverage, double target_quantile) {
    if (!(coverage >= 0.0 && coverage <= 1.0)) throw std::invalid_argument("coverage must be in [0, 1]");
    if (!(target_quantile > 0.0 && target_quantile <= 1.0)) throw std::invalid_argument("target quantile must be in (0, 1]");
    if (coverage == 0.0) throw MetricError(MetricErrorKind::ZeroCoverage, "window captures no citations; scaling undefined");
    return target_quantile / coverage;
}

double adjusted_impact(double jif, double scaling) {
    if (!(scaling > 0.0)) throw std::invalid_argument("scaling factor must be positive");
    return jif * scaling;
}

std::map<std::string, double, JournalLess> normalize_within_field(
    const std::map<std::string, double, JournalLess>& values,
    const std::map<std::string, std::string, JournalLess>& field_of) {
    struct Accumulator {
        double sum = 0.0;
        int n = 0;
    };
    std::map<std::string, Accumulator, JournalLess> fields;
    for (const auto& [journal, value] : values) {
        const auto it = field_of.find(journal);
        if (it == field_of.end()) throw std::invalid_argument("journal '" + journal + "' has no field assignment");
        Accumulator& acc = fields[it->second];
        acc.sum += value;
        ++acc.n;
    }
    std::map<std::string, double, JournalLess> out;
    for (const auto& [journal, value] : values) {
        const std::string& field = field_of.find(journal)->second;
        const Accumulator& acc = fields.find(field)->second;
        const double mean = acc.sum / acc.n;
        if (!(mean > 0.0)) throw MetricError(MetricErrorKind::ZeroFieldMean, "field '" + field + "' has zero mean");
        out.emplace(journal, value / mean);
    }
    return out;
}

int journal_age(const CitationProfile& profile, Year eval_year) {
    const auto first = profile.first_cited_year();
    if (!first) return 0;
    return eval_year - *first + 1;
}

std::string_view to_string(Flag flag) noexcept {
    switch (flag) {
        case Flag::HalfLifeUnreliable: return "HalfLifeUnreliable";
        case Flag::MissingDenominator: return "MissingDenominator";
        case Flag::ZeroWindowCitations: return "ZeroWindowCitations";
    }
    return "?";
}

std::vector<std::string_view> FlagSet::names() const {
    std::vector<std::string_view> out;
    for (const Flag f : kAll) {
        if (contains(f)) out.push_back(to_string(f));
    }
    return out;
}

FlagSet reliability_flags(const CitationProfile& profile, Year eval_year, std::optional<double> half_life_exact) {
    FlagSet flags;
    if (half_life_exact && journal_age(profile, eval_year) < 2.0 * *half_life_exact) flags.insert(Flag::HalfLifeUnreliable);
    return flags;
}

double round_report(double value) {
    // Nudge by a relative epsilon so decimal halves stored just below .x5
    // (0.25 -> 0.2499999...) still round away from zero.
    const double scaled = value * 10.0;
    const double nudged = scaled + std::copysign(std::abs(scaled) * 1e-12, scaled);
    return std::round(nudged) / 10.0;
}

}  // namespace citemetrics
