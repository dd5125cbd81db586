#include "citemetrics/report.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "citemetrics/error.hpp"
#include "text_util.hpp"

namespace citemetrics {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string optional_number(const std::optional<double>& v) { return v ? detail::format_number(*v) : std::string(); }

ordered_json json_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string joined_flags(const FlagSet& flags) {
    std::string out;
    for (const std::string_view name : flags.names()) {
        if (!out.empty()) out += ';';
        out += name;
    }
    return out;
}

}  // namespace

Year observed_through(const ProfileMap& profiles) {
    Year last = 0;
    for (const auto& [name, profile] : profiles) {
        if (const auto y = profile.last_citing_year()) last = std::max(last, *y);
    }
    return last;
}

IndicatorReport compute_report(const CitationProfile& profile, const PublicationCounts& pubs, Year eval_year,
                               Year observed_through, const ReportOptions& options, std::vector<std::string>* warnings) {
    options.policy.validate();
    options.classes.validate();
    auto warn = [&](const std::string& message) {
        if (warnings) warnings->push_back(profile.journal + ": " + message);
    };

    IndicatorReport r;
    r.journal = profile.journal;
    r.eval_year = eval_year;

    const std::span<const int> window(options.policy.window_ages);
    r.jif_citations = window_citations(profile, eval_year, window);
    try {
        r.jif = impact_factor(profile, pubs, eval_year, window).value();
    } catch (const MetricError& e) {
        r.flags.insert(Flag::MissingDenominator);
        warn(e.what());
    }
    const int same_year[] = {0};
    r.immediacy_citations = window_citations(profile, eval_year, same_year);
    try {
        r.immediacy = immediacy_index(profile, pubs, eval_year).value();
    } catch (const MetricError& e) {
        r.flags.insert(Flag::MissingDenominator);
        warn(e.what());
    }

    r.half_life_exact = cited_half_life(profile, eval_year, 0.5);
    if (r.half_life_exact) r.half_life_jcr = jcr_truncate(*r.half_life_exact);
    r.flags |= reliability_flags(profile, eval_year, r.half_life_exact);

    try {
        const std::vector<AccrualCurve> volumes = volume_curves(profile, observed_through, options.policy.horizon);
        const AccrualCurve mean = mean_accrual_curve(volumes, options.policy.horizon);
        r.coverage = window_coverage(mean, options.policy);
        r.journal_class = classify_journal(*r.coverage, options.classes);
        r.scaling_factor = scaling_factor(*r.coverage, options.policy.target_quantile);
        if (r.jif) r.adjusted_jif = adjusted_impact(*r.jif, *r.scaling_factor);
    } catch (const MetricError& e) {
        switch (e.kind()) {
            case MetricErrorKind::ZeroWindowCitations:
            case MetricErrorKind::ZeroCoverage:
                r.flags.insert(Flag::ZeroWindowCitations);
                break;
            default:
                break;
        }
        warn(e.what());
    }
    return r;
}

std::vector<IndicatorReport> compute_reports(const ProfileMap& profiles, const PublicationCounts& pubs, Year eval_year,
                                             const ReportOptions& options, std::vector<std::string>* warnings) {
    const Year through = observed_through(profiles);
    std::vector<IndicatorReport> out;
    out.reserve(profiles.size());
    for (const auto& [name, profile] : profiles) {
        out.push_back(compute_report(profile, pubs, eval_year, through, options, warnings));
    }
    return out;
}

void write_reports_csv(std::ostream& out, std::span<const IndicatorReport> reports, bool with_class) {
    for (std::size_t i = 0; i < std::size(kReportColumns); ++i) out << (i ? "," : "") << kReportColumns[i];
    out << (with_class ? ",class\n" : "\n");
    for (const IndicatorReport& r : reports) {
        out << r.journal << ',' << r.eval_year << ',' << optional_number(r.jif) << ',' << optional_number(r.immediacy)
            << ',' << optional_number(r.half_life_exact) << ',' << (r.half_life_jcr ? r.half_life_jcr->to_string() : "")
            << ',' << optional_number(r.coverage) << ',' << optional_number(r.scaling_factor) << ','
            << optional_number(r.adjusted_jif) << ',' << joined_flags(r.flags);
        if (with_class) out << ',' << (r.journal_class ? to_string(*r.journal_class) : "");
        out << '\n';
    }
}

void write_reports_json(std::ostream& out, std::span<const IndicatorReport> reports, bool with_class) {
    ordered_json rows = ordered_json::array();
    for (const IndicatorReport& r : reports) {
        ordered_json row;
        row["journal"] = r.journal;
        row["eval_year"] = r.eval_year;
        row["jif"] = json_number(r.jif);
        row["immediacy"] = json_number(r.immediacy);
        row["half_life_exact"] = json_number(r.half_life_exact);
        if (!r.half_life_jcr) {
            row["half_life_jcr"] = nullptr;
        } else if (r.half_life_jcr->over_ten) {
            row["half_life_jcr"] = ">10";
        } else {
            row["half_life_jcr"] = round_report(r.half_life_jcr->value);
        }
        row["coverage"] = json_number(r.coverage);
        row["scaling_factor"] = json_number(r.scaling_factor);
        row["adjusted_jif"] = json_number(r.adjusted_jif);
        ordered_json flags = ordered_json::array();
        for (const std::string_view name : r.flags.names()) flags.push_back(std::string(name));
        row["flags"] = std::move(flags);
        if (with_class) {
            row["class"] = r.journal_class ? ordered_json(std::string(to_string(*r.journal_class))) : ordered_json(nullptr);
        }
        rows.push_back(std::move(row));
    }
    out << rows.dump(2) << '\n';
}

void write_curves_csv(std::ostream& out, std::span<const AccrualCurve> curves, bool header) {
    if (header) out << "journal,pub_year,kind,age,value,observations\n";
    for (const AccrualCurve& c : curves) {
        for (std::size_t age = 0; age < c.values.size(); ++age) {
            out << c.journal << ',';
            if (c.pub_year) out << *c.pub_year;
            out << ',' << to_string(c.kind) << ',' << age << ',' << detail::format_number(c.values[age]) << ',';
            if (age < c.observations.size()) out << c.observations[age];
            out << '\n';
        }
    }
}

}  // namespace citemetrics
