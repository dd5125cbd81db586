#pragma once

// Assembles every indicator for a (journal, evaluation year) and writes the
// result as CSV or JSON.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citemetrics/curves.hpp"
#include "citemetrics/ledger.hpp"
#include "citemetrics/metrics.hpp"

namespace citemetrics {

struct ReportOptions {
    WindowPolicy policy;
    ClassThresholds classes;
};

// Latest citing year anywhere in the ledger; volumes count as observed up
// to this year.
Year observed_through(const ProfileMap& profiles);

// Undefined indicators are left empty; non-fatal problems are appended to
// `warnings` when given.
IndicatorReport compute_report(const CitationProfile& profile, const PublicationCounts& pubs, Year eval_year,
                               Year observed_through, const ReportOptions& options = {},
                               std::vector<std::string>* warnings = nullptr);

// One report per profile, ordered by journal.
std::vector<IndicatorReport> compute_reports(const ProfileMap& profiles, const PublicationCounts& pubs,
                                             Year eval_year, const ReportOptions& options = {},
                                             std::vector<std::string>* warnings = nullptr);

// Column order shared by CSV and JSON. `class` is appended when requested.
inline constexpr std::string_view kReportColumns[] = {
    "journal",  "eval_year",      "jif",          "immediacy", "half_life_exact",
    "half_life_jcr", "coverage", "scaling_factor", "adjusted_jif", "flags",
};

void write_reports_csv(std::ostream& out, std::span<const IndicatorReport> reports, bool with_class = false);
void write_reports_json(std::ostream& out, std::span<const IndicatorReport> reports, bool with_class = false);

// Columns: journal,pub_year,kind,age,value,observations.
void write_curves_csv(std::ostream& out, std::span<const AccrualCurve> curves, bool header = true);

}  // namespace citemetrics
