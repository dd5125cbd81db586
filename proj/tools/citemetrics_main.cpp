// citemetrics: journal impact indicators from citation ledgers.
//
//   citemetrics report   --citations C --publications P --year Y [--format csv|json]
//   citemetrics adjust   --citations C --publications P --year Y [--fields F]
//   citemetrics curves   --citations C --journal NAME [--svg out.svg]
//   citemetrics synth    SPEC... --out-dir DIR
//   citemetrics validate [--citations C] [--publications P] [--aliases A] [--synth S]
//
// Exit codes: 0 success, 2 input error, 3 configuration error.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "citemetrics/curves.hpp"
#include "citemetrics/error.hpp"
#include "citemetrics/ledger.hpp"
#include "citemetrics/metrics.hpp"
#include "citemetrics/report.hpp"
#include "citemetrics/svg.hpp"
#include "citemetrics/synth.hpp"

namespace fs = std::filesystem;
using namespace citemetrics;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

// An input problem tied to a file.
struct FileError {
    std::string path;
    std::size_t line = 0;
    std::string reason;
};

struct RunConfig {
    std::string citations;
    std::string publications;
    std::string aliases;
    std::optional<int> year;
    std::string window = "1,2";
    int horizon = 20;
    double quantile = 0.5;
    bool strip_self = false;
    std::string format = "csv";
    std::string out;
    std::string svg;
    std::string chart = "standardized";
    std::string journal;
    std::string fields;
    double self_threshold = 0.5;
    double deviation_threshold = 25.0;
    double hare = 0.25;
    double tortoise = 0.15;
    std::vector<std::string> synth_specs;
    std::string out_dir;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError{path, 0, "cannot open file"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <typename Fn>
auto parse_file(const std::string& path, Fn&& parse) {
    const std::string text = read_file(path);
    try {
        return parse(std::string_view(text));
    } catch (const InputError& e) {
        throw FileError{path, e.line(), e.reason()};
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError{path, 0, "cannot write file"};
    out << content;
}

WindowPolicy make_policy(const RunConfig& cfg) {
    WindowPolicy policy;
    policy.window_ages.clear();
    std::stringstream ss(cfg.window);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int age = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            policy.window_ages.push_back(age);
        } catch (const std::exception&) {
            throw ConfigError("--window must be a comma-separated list of ages, got '" + cfg.window + "'");
        }
    }
    policy.horizon = cfg.horizon;
    policy.target_quantile = cfg.quantile;
    policy.validate();
    return policy;
}

ClassThresholds make_classes(const RunConfig& cfg) {
    ClassThresholds t{cfg.hare, cfg.tortoise};
    t.validate();
    return t;
}

AnomalyThresholds make_anomaly_thresholds(const RunConfig& cfg) {
    AnomalyThresholds t{cfg.self_threshold, cfg.deviation_threshold};
    t.validate();
    return t;
}

struct Ledger {
    ProfileMap profiles;
    PublicationCounts publications;
};

Ledger load_ledger(const RunConfig& cfg) {
    if (cfg.citations.empty()) throw ConfigError("--citations is required");
    AliasMap aliases;
    if (!cfg.aliases.empty()) aliases = parse_file(cfg.aliases, [](std::string_view t) { return parse_alias_csv(t); });
    const auto records = parse_file(cfg.citations, [&](std::string_view t) { return parse_citation_csv(t, aliases); });
    Ledger ledger;
    ledger.profiles = build_profiles(records);
    if (cfg.strip_self) ledger.profiles = strip_self_references(ledger.profiles);
    if (!cfg.publications.empty()) {
        ledger.publications = parse_file(cfg.publications, [](std::string_view t) { return parse_publication_csv(t); });
    }
    return ledger;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

// Mean accrual curve per journal, the shape of the average-citations chart.
std::string mean_curve_chart(const ProfileMap& profiles, const WindowPolicy& policy) {
    const Year through = observed_through(profiles);
    std::vector<ChartSeries> series;
    for (const auto& [name, profile] : profiles) {
        try {
            const AccrualCurve mean = mean_accrual_curve(volume_curves(profile, through, policy.horizon), policy.horizon);
            ChartSeries s{profile.journal, {}, false};
            for (std::size_t a = 0; a < mean.values.size(); ++a) s.points.emplace_back(static_cast<double>(a), mean.values[a]);
            series.push_back(std::move(s));
        } catch (const MetricError&) {
            // Journals without a full horizon of history have no mean curve.
        }
    }
    if (series.empty()) throw ConfigError("no journal has enough history for a mean accrual chart");
    return emit_svg_chart(series, ChartOptions{"Mean citations by years since publication", "years since publication",
                                               "mean citations per volume"});
}

int cmd_report(const RunConfig& cfg) {
    if (!cfg.year) throw ConfigError("--year is required");
    const ReportOptions options{make_policy(cfg), make_classes(cfg)};
    const Ledger ledger = load_ledger(cfg);
    std::vector<std::string> warnings;
    const auto reports = compute_reports(ledger.profiles, ledger.publications, *cfg.year, options, &warnings);
    print_warnings(warnings);

    std::ostringstream out;
    if (cfg.format == "json") {
        write_reports_json(out, reports, true);
    } else {
        write_reports_csv(out, reports, true);
    }
    write_output(cfg.out, out.str());
    if (!cfg.svg.empty() && !ledger.profiles.empty()) write_output(cfg.svg, mean_curve_chart(ledger.profiles, options.policy));
    return 0;
}

// 1-based rank by descending value; ties keep journal order, undefined
// values get no rank.
std::vector<std::optional<int>> rank_descending(const std::vector<std::optional<double>>& values) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return *values[a] > *values[b]; });
    std::vector<std::optional<int>> ranks(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r) + 1;
    return ranks;
}

std::map<std::string, std::string, JournalLess> parse_fields(std::string_view text) {
    std::map<std::string, std::string, JournalLess> fields;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!header) {
            if (line != "journal,field") throw InputError(n, "expected header 'journal,field'");
            header = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw InputError(n, "expected 2 columns");
        }
        const std::string journal(trim(std::string_view(line).substr(0, comma)));
        const std::string field(trim(std::string_view(line).substr(comma + 1)));
        if (journal.empty() || field.empty()) throw InputError(n, "empty journal or field");
        if (!fields.emplace(journal, field).second) throw InputError(n, "journal '" + journal + "' listed twice");
    }
    return fields;
}

int cmd_adjust(const RunConfig& cfg) {
    if (!cfg.year) throw ConfigError("--year is required");
    const ReportOptions options{make_policy(cfg), make_classes(cfg)};
    const Ledger ledger = load_ledger(cfg);
    std::vector<std::string> warnings;
    const auto reports = compute_reports(ledger.profiles, ledger.publications, *cfg.year, options, &warnings);
    print_warnings(warnings);

    std::vector<std::optional<double>> jifs, adjusted;
    for (const IndicatorReport& r : reports) {
        jifs.push_back(r.jif);
        adjusted.push_back(r.adjusted_jif);
    }
    const auto jif_rank = rank_descending(jifs);
    const auto adjusted_rank = rank_descending(adjusted);

    std::optional<std::map<std::string, double, JournalLess>> normalized;
    if (!cfg.fields.empty()) {
        const auto field_of = parse_file(cfg.fields, [](std::string_view t) { return parse_fields(t); });
        std::map<std::string, double, JournalLess> values;
        for (const IndicatorReport& r : reports) {
            if (r.adjusted_jif && field_of.contains(r.journal)) values.emplace(r.journal, *r.adjusted_jif);
        }
        try {
            normalized = normalize_within_field(values, field_of);
        } catch (const MetricError& e) {
            std::cerr << "warning: " << e.what() << "; normalized column left blank\n";
            normalized.emplace();
        }
    }

    auto num = [](const std::optional<double>& v) -> std::string {
        if (!v) return "";
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *v);
        return std::string(buf, ptr);
    };
    std::ostringstream out;
    if (cfg.format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const IndicatorReport& r = reports[i];
            auto opt = [](const auto& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
            nlohmann::ordered_json row;
            row["journal"] = r.journal;
            row["eval_year"] = r.eval_year;
            row["jif"] = opt(r.jif);
            row["coverage"] = opt(r.coverage);
            row["scaling_factor"] = opt(r.scaling_factor);
            row["adjusted_jif"] = opt(r.adjusted_jif);
            row["class"] = r.journal_class ? nlohmann::ordered_json(std::string(to_string(*r.journal_class))) : nlohmann::ordered_json(nullptr);
            row["jif_rank"] = opt(jif_rank[i]);
            row["adjusted_rank"] = opt(adjusted_rank[i]);
            if (normalized) {
                const auto it = normalized->find(r.journal);
                row["normalized_adjusted_jif"] = it == normalized->end() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(it->second);
            }
            rows.push_back(std::move(row));
        }
        out << rows.dump(2) << '\n';
    } else {
        out << "journal,eval_year,jif,coverage,scaling_factor,adjusted_jif,class,jif_rank,adjusted_rank";
        out << (normalized ? ",normalized_adjusted_jif\n" : "\n");
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const IndicatorReport& r = reports[i];
            out << r.journal << ',' << r.eval_year << ',' << num(r.jif) << ',' << num(r.coverage) << ','
                << num(r.scaling_factor) << ',' << num(r.adjusted_jif) << ','
                << (r.journal_class ? to_string(*r.journal_class) : "") << ','
                << (jif_rank[i] ? std::to_string(*jif_rank[i]) : "") << ','
                << (adjusted_rank[i] ? std::to_string(*adjusted_rank[i]) : "");
            if (normalized) {
                const auto it = normalized->find(r.journal);
                out << ',' << (it == normalized->end() ? std::string() : num(it->second));
            }
            out << '\n';
        }
    }
    write_output(cfg.out, out.str());
    return 0;
}

int cmd_curves(const RunConfig& cfg) {
    if (cfg.journal.empty()) throw ConfigError("--journal is required");
    if (cfg.chart != "raw" && cfg.chart != "cumulative" && cfg.chart != "standardized") {
        throw ConfigError("--chart must be raw, cumulative or standardized");
    }
    const WindowPolicy policy = make_policy(cfg);
    const AnomalyThresholds thresholds = make_anomaly_thresholds(cfg);
    const Ledger ledger = load_ledger(cfg);
    const auto it = ledger.profiles.find(cfg.journal);
    if (it == ledger.profiles.end()) throw FileError{cfg.citations, 0, "journal '" + cfg.journal + "' is not cited in the ledger"};
    const CitationProfile& profile = it->second;
    const Year through = observed_through(ledger.profiles);

    const std::vector<AccrualCurve> volumes = volume_curves(profile, through, policy.horizon);
    std::vector<AccrualCurve> rows;
    std::vector<ChartSeries> series;
    std::size_t longest = 0;
    for (const AccrualCurve& raw : volumes) {
        longest = std::max(longest, raw.values.size());
        const AccrualCurve cum = cumulative(raw);
        rows.push_back(raw);
        rows.push_back(cum);
        const AccrualCurve* charted = cfg.chart == "raw" ? &rows[rows.size() - 2] : &rows.back();
        std::optional<AccrualCurve> standardized;
        if (raw.values.size() > 2) {
            try {
                standardized = standardize_to_age2(cum);
            } catch (const MetricError& e) {
                std::cerr << "warning: " << profile.journal << ": " << e.what() << "; volume left out of standardized analysis\n";
            }
        }
        ChartSeries s{std::to_string(*raw.pub_year), {}, false};
        if (cfg.chart == "standardized") {
            if (standardized) {
                for (std::size_t a = 0; a < standardized->values.size(); ++a) {
                    s.points.emplace_back(static_cast<double>(a), standardized->values[a]);
                }
            }
        } else {
            for (std::size_t a = 0; a < charted->values.size(); ++a) s.points.emplace_back(static_cast<double>(a), charted->values[a]);
        }
        if (!s.points.empty()) series.push_back(std::move(s));
        if (standardized) rows.push_back(std::move(*standardized));
    }

    if (!volumes.empty()) {
        const int mean_horizon = std::min(policy.horizon, static_cast<int>(longest) - 1);
        try {
            rows.push_back(mean_accrual_curve(volumes, mean_horizon));
        } catch (const MetricError& e) {
            std::cerr << "warning: " << profile.journal << ": " << e.what() << '\n';
        }
    }

    const EvidenceSet evidence = volume_evidence(profile, through, policy.horizon);
    std::set<Year> flagged;
    if (evidence.volumes.size() >= 3) {
        for (const AnomalyFinding& f : detect_anomalous_volumes(evidence.volumes, thresholds)) {
            flagged.insert(f.pub_year);
            std::cerr << "anomaly: " << f.journal << " volume " << f.pub_year << " age " << f.age << ' ' << to_string(f.reason)
                      << ' ' << f.deviation;
            if (f.reason == AnomalyReason::SelfCitationSpike) std::cerr << " (" << f.self << '/' << f.total << ')';
            std::cerr << '\n';
        }
    }

    std::ostringstream out;
    write_curves_csv(out, rows);
    write_output(cfg.out, out.str());

    if (!cfg.svg.empty()) {
        if (series.empty()) throw ConfigError("no curves to chart for '" + cfg.journal + "'");
        for (ChartSeries& s : series) s.dashed = flagged.contains(std::stoi(s.name));
        const std::string y_label = cfg.chart == "standardized" ? "cumulative citations, % of age-2 total"
                                    : cfg.chart == "cumulative" ? "cumulative citations"
                                                                : "citations per year";
        write_output(cfg.svg, emit_svg_chart(series, ChartOptions{profile.journal + " (" + cfg.chart + ")",
                                                                  "years since publication", y_label}));
    }
    return 0;
}

int cmd_synth(const RunConfig& cfg) {
    if (cfg.synth_specs.empty()) throw ConfigError("at least one spec file is required");
    if (cfg.out_dir.empty()) throw ConfigError("--out-dir is required");
    ProfileMap profiles;
    PublicationCounts pubs;
    for (const std::string& path : cfg.synth_specs) {
        const SynthSpec spec = parse_file(path, [](std::string_view t) { return parse_synth_spec(t); });
        GeneratedLedger generated = generate_profile(spec);
        if (profiles.contains(generated.profile.journal)) {
            throw FileError{path, 0, "journal '" + generated.profile.journal + "' defined twice"};
        }
        for (const auto& [key, items] : generated.publications.entries()) pubs.add(key.journal, key.year, items);
        profiles.emplace(generated.profile.journal, std::move(generated.profile));
    }
    fs::create_directories(cfg.out_dir);
    std::ostringstream citations, publications;
    write_citation_csv(citations, profiles);
    write_publication_csv(publications, pubs);
    write_output((fs::path(cfg.out_dir) / "citations.csv").string(), citations.str());
    write_output((fs::path(cfg.out_dir) / "publications.csv").string(), publications.str());
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    if (cfg.citations.empty() && cfg.publications.empty() && cfg.aliases.empty() && cfg.synth_specs.empty()) {
        throw ConfigError("nothing to validate");
    }
    AliasMap aliases;
    if (!cfg.aliases.empty()) {
        aliases = parse_file(cfg.aliases, [](std::string_view t) { return parse_alias_csv(t); });
        std::cout << cfg.aliases << ": " << aliases.size() << " aliases\n";
    }
    if (!cfg.citations.empty()) {
        const auto records = parse_file(cfg.citations, [&](std::string_view t) { return parse_citation_csv(t, aliases); });
        const ProfileMap profiles = build_profiles(records);
        std::cout << cfg.citations << ": " << records.size() << " rows, " << total_count(records) << " citations, "
                  << profiles.size() << " cited journals\n";
    }
    if (!cfg.publications.empty()) {
        const auto pubs = parse_file(cfg.publications, [](std::string_view t) { return parse_publication_csv(t); });
        std::cout << cfg.publications << ": " << pubs.size() << " entries\n";
    }
    for (const std::string& path : cfg.synth_specs) {
        const SynthSpec spec = parse_file(path, [](std::string_view t) { return parse_synth_spec(t); });
        std::cout << path << ": journal " << spec.journal << ", kernel " << spec.kernel.to_string() << '\n';
    }
    return 0;
}

void add_ledger_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--citations", cfg.citations, "citations.csv ledger");
    cmd->add_option("--publications", cfg.publications, "publications.csv (citeable items)");
    cmd->add_option("--aliases", cfg.aliases, "aliases.csv (journal renames and mergers)");
    cmd->add_flag("--strip-self", cfg.strip_self, "drop journal self-citations before computing");
    cmd->add_option("--out", cfg.out, "output file (default: standard output)");
}

void add_policy_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--window", cfg.window, "citation window ages")->default_val("1,2");
    cmd->add_option("--horizon", cfg.horizon, "years in the reference total")->default_val(20);
    cmd->add_option("--quantile", cfg.quantile, "quantile the adjusted impact represents")->default_val(0.5);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Journal impact indicators from citation ledgers"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* report = app.add_subcommand("report", "indicator report per journal");
    add_ledger_options(report, cfg);
    add_policy_options(report, cfg);
    report->add_option("--year", cfg.year, "evaluation year");
    report->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    report->add_option("--svg", cfg.svg, "write a mean accrual chart");
    report->add_option("--hare", cfg.hare, "coverage at or above which a journal is a Hare");
    report->add_option("--tortoise", cfg.tortoise, "coverage at or below which a journal is a Tortoise");

    auto* adjust = app.add_subcommand("adjust", "impact factors scaled for window coverage, with rankings");
    add_ledger_options(adjust, cfg);
    add_policy_options(adjust, cfg);
    adjust->add_option("--year", cfg.year, "evaluation year");
    adjust->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    adjust->add_option("--fields", cfg.fields, "fields.csv (journal,field) for within-field normalization");
    adjust->add_option("--hare", cfg.hare, "coverage at or above which a journal is a Hare");
    adjust->add_option("--tortoise", cfg.tortoise, "coverage at or below which a journal is a Tortoise");

    auto* curves = app.add_subcommand("curves", "accrual curves for one journal");
    add_ledger_options(curves, cfg);
    add_policy_options(curves, cfg);
    curves->add_option("--journal", cfg.journal, "journal to plot");
    curves->add_option("--svg", cfg.svg, "write a chart with one line per volume");
    curves->add_option("--chart", cfg.chart, "raw, cumulative or standardized")->default_val("standardized");
    curves->add_option("--self-threshold", cfg.self_threshold, "self-citation rate that flags a volume");
    curves->add_option("--deviation-threshold", cfg.deviation_threshold, "percentage points from the median curve that flag a volume");

    auto* synth = app.add_subcommand("synth", "expand synthetic journal specs into ledger files");
    synth->add_option("specs", cfg.synth_specs, "spec files")->required();
    synth->add_option("--out-dir", cfg.out_dir, "directory for citations.csv and publications.csv")->required();

    auto* validate = app.add_subcommand("validate", "parse input files and report counts");
    validate->add_option("--citations", cfg.citations, "citations.csv ledger");
    validate->add_option("--publications", cfg.publications, "publications.csv");
    validate->add_option("--aliases", cfg.aliases, "aliases.csv");
    validate->add_option("--synth", cfg.synth_specs, "synthetic journal spec");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*report) return cmd_report(cfg);
        if (*adjust) return cmd_adjust(cfg);
        if (*curves) return cmd_curves(cfg);
        if (*synth) return cmd_synth(cfg);
        if (*validate) return cmd_validate(cfg);
    } catch (const FileError& e) {
        std::cerr << "citemetrics: " << e.path;
        if (e.line) std::cerr << ':' << e.line;
        std::cerr << ": " << e.reason << '\n';
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "citemetrics: " << e.what() << '\n';
        return kExitInput;
    } catch (const ConfigError& e) {
        std::cerr << "citemetrics: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "citemetrics: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}
