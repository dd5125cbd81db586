// Acceptance suite: one PASS/FAIL line per criterion, each with its time
// budget. Exits non-zero when any criterion fails.

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "citemetrics/curves.hpp"
#include "citemetrics/error.hpp"
#include "citemetrics/ledger.hpp"
#include "citemetrics/metrics.hpp"
#include "citemetrics/report.hpp"
#include "citemetrics/synth.hpp"
#include "cli_runner.hpp"
#include "oracles.hpp"

using namespace citemetrics;
using namespace citemetrics::testing;
namespace fs = std::filesystem;

namespace {

// Collects failed expectations for one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 8) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    void near(double got, double want, double tol, const std::string& what) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: got %.12g, want %.12g +/- %g", what.c_str(), got, want, tol);
        expect(std::abs(got - want) <= tol, buf);
    }
    bool ok() const { return failed_ == 0; }
    const std::vector<std::string>& failures() const { return failures_; }
    std::size_t failed() const { return failed_; }

private:
    std::vector<std::string> failures_;
    std::size_t failed_ = 0;
};

struct Criterion {
    int id;
    std::string name;
    double budget_ms;
    std::function<void(Check&)> body;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

// Synthetic ledger pushed through the same CSV path a real ledger takes.
struct Ledger {
    ProfileMap profiles;
    PublicationCounts publications;
};

Ledger ledger_from_specs(const std::vector<SynthSpec>& specs) {
    ProfileMap generated;
    PublicationCounts pubs;
    for (const SynthSpec& s : specs) {
        GeneratedLedger g = generate_profile(s);
        for (const auto& [key, items] : g.publications.entries()) pubs.add(key.journal, key.year, items);
        generated.emplace(g.profile.journal, std::move(g.profile));
    }
    std::ostringstream citations, publications;
    write_citation_csv(citations, generated);
    write_publication_csv(publications, pubs);
    return Ledger{build_profiles(parse_citation_csv(std::string_view(citations.str()))),
                  parse_publication_csv(std::string_view(publications.str()))};
}

SynthSpec fixture_spec(const std::string& name) { return parse_synth_spec(slurp(fixture(name))); }

// ---------------------------------------------------------------------------

void published_arithmetic(Check& c) {
    const double hare = scaling_factor(0.38, 0.5);
    c.expect(hare >= 1.25 && hare <= 1.35, fmt("scaling_factor(0.38) = %g outside [1.25, 1.35]", hare));
    c.near(round_report(hare), 1.3, 1e-12, "Hare scaling factor at 1 decimal");
    c.near(round_report(scaling_factor(0.065, 0.5)), 7.7, 1e-12, "Tortoise scaling factor at 1 decimal");
    c.near(round_report(adjusted_impact(0.2, 1.3158)), 0.3, 1e-12, "Hare adjusted JIF at 1 decimal");
    c.near(adjusted_impact(1.3, 7.7), 10.1, 0.15, "Tortoise adjusted JIF");
}

void calibrated_fixtures(Check& c) {
    const Ledger ledger = ledger_from_specs({fixture_spec("hare.synth"), fixture_spec("tortoise.synth")});
    const auto reports = compute_reports(ledger.profiles, ledger.publications, 2004);
    c.expect(reports.size() == 2, "expected two journals");
    if (reports.size() != 2) return;
    const IndicatorReport& hare = reports[0];
    const IndicatorReport& tortoise = reports[1];
    c.expect(hare.journal == "Hare" && tortoise.journal == "Tortoise", "journal names");
    c.expect(hare.jif && tortoise.jif && hare.coverage && tortoise.coverage && hare.half_life_jcr && tortoise.half_life_jcr,
             "all indicators defined");
    if (!c.ok()) return;

    c.near(*hare.jif, 0.2, 0.05, "Hare JIF");
    c.near(*tortoise.jif, 1.3, 0.05, "Tortoise JIF");
    c.near(*hare.coverage, 0.38, 0.01, "Hare coverage");
    c.near(*tortoise.coverage, 0.06, 0.01, "Tortoise coverage");
    c.expect(!hare.half_life_jcr->over_ten, "Hare half-life is not >10");
    c.near(hare.half_life_jcr->value, 2.4, 0.2, "Hare half_life_jcr");
    c.expect(tortoise.half_life_jcr->to_string() == ">10", "Tortoise half_life_jcr is \">10\"");
    c.expect(hare.journal_class == JournalClass::Hare, "Hare classified Hare");
    c.expect(tortoise.journal_class == JournalClass::Tortoise, "Tortoise classified Tortoise");

    const Year through = observed_through(ledger.profiles);
    const EvidenceSet hare_ev = volume_evidence(ledger.profiles.at("Hare"), through, 20);
    bool spike = false;
    for (const AnomalyFinding& f : detect_anomalous_volumes(hare_ev.volumes)) {
        if (f.pub_year == 1993 && f.reason == AnomalyReason::SelfCitationSpike && f.self == 38 && f.total == 44) spike = true;
    }
    c.expect(spike, "Hare 1993 flagged SelfCitationSpike at 38/44");

    // The enlarged 1996 volume against the median of its peers.
    const EvidenceSet tort_ev = volume_evidence(ledger.profiles.at("Tortoise"), through, 20);
    const VolumeEvidence* target = nullptr;
    for (const VolumeEvidence& v : tort_ev.volumes) {
        if (v.pub_year == 1996) target = &v;
    }
    c.expect(target != nullptr, "Tortoise 1996 volume standardized");
    if (!target) return;
    double worst = 0.0;
    for (std::size_t a = 2; a < target->standardized.values.size(); ++a) {
        std::vector<double> peers;
        for (const VolumeEvidence& v : tort_ev.volumes) {
            if (v.pub_year != 1996 && a < v.standardized.values.size()) peers.push_back(v.standardized.values[a]);
        }
        if (peers.size() < 3) continue;
        std::sort(peers.begin(), peers.end());
        const std::size_t m = peers.size() / 2;
        const double median = peers.size() % 2 ? peers[m] : (peers[m - 1] + peers[m]) / 2.0;
        worst = std::max(worst, std::abs(target->standardized.values[a] - median));
    }
    c.expect(worst < 1.0, fmt("Tortoise 1996 deviates %.4f pp from its peers", worst));
    for (const AnomalyFinding& f : detect_anomalous_volumes(tort_ev.volumes)) {
        c.expect(f.pub_year != 1996, fmt("Tortoise 1996 flagged at age %d", f.age));
    }
}

void half_life_oracle(Check& c) {
    std::mt19937_64 rng(1000);
    std::uniform_int_distribution<int> ages(1, 30);
    const double quantiles[] = {0.1, 0.25, 0.5, 0.75, 0.9};
    for (int i = 0; i < 1000; ++i) {
        const CitationProfile p = random_profile(rng, "J", 2020, ages(rng), 100);
        // Oracle input read straight from the cells.
        std::vector<std::int64_t> counts;
        for (const auto& [key, cell] : p.cells) {
            if (key.citing_year != 2020) continue;
            const auto age = static_cast<std::size_t>(2020 - key.cited_year);
            if (counts.size() <= age) counts.resize(age + 1, 0);
            counts[age] += cell.total;
        }
        std::int64_t total = 0;
        for (auto n : counts) total += n;
        const auto got = cited_half_life(p, 2020);
        if (total == 0) {
            c.expect(!got, fmt("profile %d: half-life defined without citations", i));
            continue;
        }
        c.expect(got.has_value(), fmt("profile %d: half-life undefined", i));
        if (!got) continue;
        c.near(*got, bisect_quantile(counts, 0.5), 1e-9, fmt("profile %d half-life", i));
        double prev = -1.0;
        for (const double q : quantiles) {
            const double h = *cited_half_life(p, 2020, q);
            c.expect(h >= prev, fmt("profile %d: quantile %.2f not monotone", i, q));
            prev = h;
        }
    }
}

void scale_invariance(Check& c) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> items(1, 300);
    for (int i = 0; i < 100; ++i) {
        const CitationProfile p = random_profile(rng, "J", 2020, 25, 60);
        PublicationCounts pubs;
        for (Year y = 1996; y <= 2020; ++y) pubs.add("J", y, items(rng));
        const IndicatorReport base = compute_report(p, pubs, 2020, 2020);
        const EvidenceSet base_ev = volume_evidence(p, 2020, 20);
        const Ratio base_jif = impact_factor(p, pubs, 2020);
        for (const std::int64_t k : {2, 7, 100}) {
            const CitationProfile q = scaled(p, k);
            const IndicatorReport r = compute_report(q, pubs, 2020, 2020);
            const Ratio jif = impact_factor(q, pubs, 2020);
            const std::string tag = fmt("profile %d k=%lld", i, static_cast<long long>(k));
            c.expect(jif.numerator == k * base_jif.numerator && jif.denominator == base_jif.denominator, tag + ": jif ratio");
            c.expect(r.jif && base.jif && *r.jif == static_cast<double>(k * base_jif.numerator) / static_cast<double>(base_jif.denominator),
                     tag + ": jif value");
            c.expect(r.coverage.has_value() == base.coverage.has_value(), tag + ": coverage defined");
            if (r.coverage && base.coverage) {
                c.expect(rel_close(*r.coverage, *base.coverage, 1e-12), tag + ": coverage");
                c.expect(rel_close(*r.scaling_factor, *base.scaling_factor, 1e-12), tag + ": scaling factor");
            }
            c.expect(r.half_life_exact.has_value() == base.half_life_exact.has_value(), tag + ": half-life defined");
            if (r.half_life_exact && base.half_life_exact) {
                c.expect(rel_close(*r.half_life_exact, *base.half_life_exact, 1e-12), tag + ": half-life");
            }
            const EvidenceSet ev = volume_evidence(q, 2020, 20);
            c.expect(ev.volumes.size() == base_ev.volumes.size() && ev.degenerate == base_ev.degenerate, tag + ": volume sets");
            for (std::size_t v = 0; v < std::min(ev.volumes.size(), base_ev.volumes.size()); ++v) {
                const auto& x = ev.volumes[v].standardized.values;
                const auto& y = base_ev.volumes[v].standardized.values;
                bool same = x.size() == y.size();
                for (std::size_t a = 0; same && a < x.size(); ++a) {
                    same = std::bit_cast<std::uint64_t>(x[a]) == std::bit_cast<std::uint64_t>(y[a]);
                }
                c.expect(same, tag + fmt(": standardized curve of volume %d", ev.volumes[v].pub_year));
            }
        }
    }
}

SynthSpec random_admissible_spec(std::mt19937_64& rng, int i) {
    std::uniform_int_distribution<int> length(3, 30);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SynthSpec s;
    s.journal = "S" + std::to_string(i);
    const int L = length(rng);
    switch (i % 3) {
        case 0: s.kernel = Kernel::flat(L); break;
        case 1: s.kernel = Kernel::geometric(0.3 + 0.65 * unit(rng), L); break;
        default: s.kernel = Kernel::rise_decay(static_cast<int>(unit(rng) * L), 0.2 + 2.0 * unit(rng), 0.5 + 0.5 * unit(rng), L);
    }
    // Integer bases on flat kernels and power-of-two bases on halving
    // geometric kernels give integral cells.
    if (i % 6 == 0) {
        s.base_citations = 1 + static_cast<int>(unit(rng) * 50);
    } else if (i % 6 == 1) {
        s.kernel = Kernel::geometric(0.5, std::min(L, 12));
        s.base_citations = 4096;
    } else {
        s.base_citations = 5.0 + 200.0 * unit(rng);
    }
    const double scale = i % 6 < 2 ? 1.0 + static_cast<int>(unit(rng) * 3) : 0.5 + unit(rng);
    s.observation_end = 2020;
    s.last_pub_year = 2020;
    s.first_pub_year = 2020 - std::max(20, L - 1) - static_cast<int>(unit(rng) * 5);
    for (Year y = s.first_pub_year; y <= s.last_pub_year; ++y) s.volume_scale[y] = scale;
    s.items_per_year = 10;
    s.self_fraction = 0.2 * unit(rng);
    return s;
}

void generator_oracle(Check& c) {
    std::mt19937_64 rng(55);
    std::vector<SynthSpec> specs;
    SynthSpec flat;
    flat.journal = "Flat21";
    flat.first_pub_year = 2000;
    flat.last_pub_year = flat.observation_end = 2020;
    flat.kernel = Kernel::flat(21);
    flat.base_citations = 10;
    flat.items_per_year = 10;
    specs.push_back(flat);
    while (specs.size() < 50) specs.push_back(random_admissible_spec(rng, static_cast<int>(specs.size())));

    int exact_specs = 0;
    for (const SynthSpec& s : specs) {
        const ExpectedMetrics e = expected_metrics(s);
        const Ledger ledger = ledger_from_specs({s});
        const CitationProfile& p = ledger.profiles.begin()->second;
        const IndicatorReport r = compute_report(p, ledger.publications, e.eval_year, observed_through(ledger.profiles));
        const std::string tag = s.journal + " (" + s.kernel.to_string() + ")";
        c.expect(r.coverage && r.half_life_exact, tag + ": indicators undefined");
        if (!r.coverage || !r.half_life_exact) continue;
        if (e.exact) {
            ++exact_specs;
            c.expect(rel_close(*r.coverage, e.coverage, 1e-12), tag + fmt(": coverage %.15g vs exact %.15g", *r.coverage, e.coverage));
            c.expect(rel_close(*r.half_life_exact, e.half_life, 1e-12),
                     tag + fmt(": half-life %.15g vs exact %.15g", *r.half_life_exact, e.half_life));
        } else {
            c.expect(*r.coverage >= e.coverage_low - 1e-12 && *r.coverage <= e.coverage_high + 1e-12,
                     tag + fmt(": coverage %.12g outside [%.12g, %.12g]", *r.coverage, e.coverage_low, e.coverage_high));
            c.expect(*r.half_life_exact >= e.half_life_low - 1e-9 && *r.half_life_exact <= e.half_life_high + 1e-9,
                     tag + fmt(": half-life %.12g outside [%.12g, %.12g]", *r.half_life_exact, e.half_life_low, e.half_life_high));
        }
        if (&s == &specs.front()) {
            c.expect(e.exact, "Flat(21) is exact");
            c.expect(*r.coverage == 2.0 / 21.0, fmt("Flat(21) coverage %.17g", *r.coverage));
            c.expect(*r.half_life_exact == 10.5, fmt("Flat(21) half-life %.17g", *r.half_life_exact));
        }
    }
    c.expect(exact_specs >= 10, fmt("only %d integer-weight specs sampled", exact_specs));
}

void ledger_properties(Check& c) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> journal(0, 49), year(1990, 2010), span(0, 8), count(0, 40);
    std::vector<CitationRecord> records;
    records.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
        const Year cited = year(rng);
        records.push_back(CitationRecord{"J" + std::to_string(journal(rng)), cited + span(rng), "J" + std::to_string(journal(rng)),
                                         cited, count(rng)});
    }
    const ProfileMap profiles = build_profiles(records);
    c.expect(total_count(profiles) == total_count(records), "aggregate total equals record total");
    std::map<std::string, std::int64_t> per_cited, per_cited_self;
    for (const auto& r : records) {
        per_cited[r.cited_journal] += r.count;
        if (r.cited_journal == r.citing_journal) per_cited_self[r.cited_journal] += r.count;
    }
    for (const auto& [name, p] : profiles) {
        std::int64_t self = 0;
        for (const auto& [key, cell] : p.cells) self += cell.self;
        c.expect(p.total() == per_cited[name], name + ": per-journal total");
        c.expect(self == per_cited_self[name], name + ": per-journal self total");
    }

    const ProfileMap stripped = strip_self_references(profiles);
    c.expect(strip_self_references(stripped) == stripped, "strip_self is idempotent");
    for (const auto& [name, p] : profiles) {
        const CitationProfile& s = stripped.at(name);
        for (const auto& [key, cell] : p.cells) {
            const CellCounts* after = s.find(key.cited_year, key.citing_year);
            const std::int64_t left = after ? after->total : 0;
            c.expect(left <= cell.total && left == cell.total - cell.self && (!after || after->self == 0),
                     name + ": strip_self is non-increasing per cell");
        }
    }

    // Half the rows name some journals by a former title.
    AliasMap aliases;
    std::ostringstream with_alias, canonical;
    with_alias << "citing_journal,citing_year,cited_journal,cited_year,count\n";
    canonical << "citing_journal,citing_year,cited_journal,cited_year,count\n";
    for (int j = 0; j < 50; j += 3) aliases.add("Former J" + std::to_string(j), "J" + std::to_string(j));
    std::bernoulli_distribution coin(0.5);
    auto old_name = [&](const std::string& name) {
        const int j = std::stoi(name.substr(1));
        return j % 3 == 0 && coin(rng) ? "former j" + std::to_string(j) : name;
    };
    for (const auto& r : records) {
        with_alias << old_name(r.citing_journal) << ',' << r.citing_year << ',' << old_name(r.cited_journal) << ',' << r.cited_year
                   << ',' << r.count << '\n';
        canonical << r.citing_journal << ',' << r.citing_year << ',' << r.cited_journal << ',' << r.cited_year << ',' << r.count << '\n';
    }
    // Canonical rows first so both ledgers pick up the same display spelling.
    std::ostringstream a, b;
    const std::string header_row = "citing_journal,citing_year,cited_journal,cited_year,count\n";
    std::string seeded_alias = header_row, seeded_canonical = header_row;
    for (int j = 0; j < 50; ++j) {
        const std::string row = "J" + std::to_string(j) + ",2010,J" + std::to_string(j) + ",2010,0\n";
        seeded_alias += row;
        seeded_canonical += row;
    }
    seeded_alias += with_alias.str().substr(header_row.size());
    seeded_canonical += canonical.str().substr(header_row.size());
    write_citation_csv(a, build_profiles(parse_citation_csv(std::string_view(seeded_alias), aliases)));
    write_citation_csv(b, build_profiles(parse_citation_csv(std::string_view(seeded_canonical))));
    c.expect(a.str() == b.str(), "alias-merged ledger serializes byte-identically");
    c.expect(a.str().find("ormer") == std::string::npos, "no former title survives");
}

using Rows = std::vector<std::map<std::string, std::string>>;

Rows read_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
    Rows rows;
    while (std::getline(in, line)) {
        std::vector<std::string> cells(1);
        for (const char ch : line) {
            if (ch == ',') {
                cells.emplace_back();
            } else {
                cells.back() += ch;
            }
        }
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = i < cells.size() ? cells[i] : "";
        rows.push_back(std::move(row));
    }
    return rows;
}

void cli_end_to_end(Check& c) {
    const fs::path dir = scratch_dir("acceptance_cli");
    const fs::path rerun = dir / "rerun";
    fs::create_directories(rerun);
    auto run = [&](const std::vector<std::string>& args) {
        const CliResult r = run_cli(args, dir);
        c.expect(r.exit_code == 0, fmt("exit %d from '%s': %s", r.exit_code, args.front().c_str(), r.err.c_str()));
        return r;
    };
    run({"synth", fixture("hare.synth"), fixture("tortoise.synth"), "--out-dir", dir.string()});
    run({"synth", fixture("hare.synth"), fixture("tortoise.synth"), "--out-dir", rerun.string()});
    c.expect(slurp(dir / "citations.csv") == slurp(rerun / "citations.csv"), "synth citations byte-identical on rerun");
    c.expect(slurp(dir / "publications.csv") == slurp(rerun / "publications.csv"), "synth publications byte-identical on rerun");

    const std::vector<std::string> common{"--citations", (dir / "citations.csv").string(), "--publications",
                                          (dir / "publications.csv").string(), "--year", "2004"};
    auto with = [&](std::vector<std::string> head, const std::vector<std::string>& tail) {
        head.insert(head.end(), common.begin(), common.end());
        head.insert(head.end(), tail.begin(), tail.end());
        return head;
    };
    const CliResult csv = run(with({"report"}, {"--svg", (dir / "mean.svg").string()}));
    const CliResult csv_again = run(with({"report"}, {"--svg", (dir / "mean2.svg").string()}));
    const CliResult json = run(with({"report"}, {"--format", "json"}));
    const CliResult json_again = run(with({"report"}, {"--format", "json"}));
    c.expect(csv.out == csv_again.out && json.out == json_again.out, "reports byte-identical on rerun");
    c.expect(slurp(dir / "mean.svg") == slurp(dir / "mean2.svg"), "mean chart byte-identical on rerun");

    const Rows rows = read_csv(csv.out);
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(json.out);
    } catch (const std::exception& e) {
        c.expect(false, std::string("JSON report does not parse: ") + e.what());
        return;
    }
    c.expect(rows.size() == 2 && parsed.size() == 2, "two rows in both formats");
    if (rows.size() != 2 || parsed.size() != 2) return;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [column, cell] : rows[i]) {
            const auto& v = parsed[i].at(column);
            const std::string tag = rows[i].at("journal") + "." + column;
            if (column == "flags") {
                std::string joined;
                for (const auto& f : v) joined += (joined.empty() ? "" : ";") + f.get<std::string>();
                c.expect(joined == cell, tag);
            } else if (v.is_null()) {
                c.expect(cell.empty(), tag);
            } else if (v.is_string()) {
                c.expect(v.get<std::string>() == cell, tag);
            } else {
                c.expect(!cell.empty() && std::stod(cell) == v.get<double>(), tag);
            }
        }
    }
    c.expect(rows[1].at("half_life_jcr") == ">10", "CSV carries \">10\" literally");
    c.expect(json.out.find("\">10\"") != std::string::npos, "JSON carries \">10\" literally");

    for (const std::string journal : {"Hare", "Tortoise"}) {
        const fs::path svg = dir / (journal + ".svg");
        const CliResult curves = run({"curves", "--citations", (dir / "citations.csv").string(), "--journal", journal, "--svg", svg.string()});
        const CliResult again = run({"curves", "--citations", (dir / "citations.csv").string(), "--journal", journal, "--svg",
                                     (dir / (journal + "2.svg")).string()});
        const std::string chart = slurp(svg);
        c.expect(chart.find("<svg") != std::string::npos && chart.find("<polyline") != std::string::npos, journal + " chart drawn");
        c.expect(chart == slurp(dir / (journal + "2.svg")) && curves.out == again.out, journal + " curves byte-identical on rerun");
    }
}

void throughput(Check& c) {
    const fs::path dir = scratch_dir("acceptance_throughput");
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> journal(0, 499), year(1985, 2004), span(0, 19), count(1, 20), items(20, 400);
    {
        std::ofstream out(dir / "citations.csv", std::ios::binary);
        out << "citing_journal,citing_year,cited_journal,cited_year,count\n";
        std::string line;
        for (int i = 0; i < 1000000; ++i) {
            const Year cited = year(rng);
            const Year citing = std::min(2004, cited + span(rng));
            out << "Journal " << journal(rng) << ',' << citing << ",Journal " << journal(rng) << ',' << cited << ',' << count(rng) << '\n';
        }
        std::ofstream pubs(dir / "publications.csv", std::ios::binary);
        pubs << "journal,year,citeable_items\n";
        for (int j = 0; j < 500; ++j) {
            for (Year y = 1985; y <= 2004; ++y) pubs << "Journal " << j << ',' << y << ',' << items(rng) << '\n';
        }
    }
    const auto t0 = std::chrono::steady_clock::now();
    const CliResult r = run_cli({"report", "--citations", (dir / "citations.csv").string(), "--publications",
                                 (dir / "publications.csv").string(), "--year", "2004", "--horizon", "15", "--out",
                                 (dir / "report.csv").string()},
                                dir);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(r.exit_code == 0, "report exit " + std::to_string(r.exit_code) + ": " + r.err.substr(0, 200));
    c.expect(read_csv(slurp(dir / "report.csv")).size() == 500, "500 journals reported");
    c.expect(seconds < 5.0, fmt("ingest and report took %.2f s", seconds));
    std::printf("      1,000,000 rows ingested and reported in %.2f s\n", seconds);
    fs::remove_all(dir);
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "published-figure arithmetic", 1, published_arithmetic},
        {2, "calibrated Hare/Tortoise fixtures", 1000, calibrated_fixtures},
        {3, "half-life oracle equivalence (1,000 profiles)", 5000, half_life_oracle},
        {4, "scale invariance (100 profiles x k in {2, 7, 100})", 5000, scale_invariance},
        {5, "generator-oracle agreement (50 specs)", 5000, generator_oracle},
        {6, "ledger conservation, strip-self, alias merge (100,000 records)", 5000, ledger_properties},
        {7, "CLI end to end", 10000, cli_end_to_end},
        // Setup writes the ledger first; the budget applies to the timed run inside.
        {8, "throughput: 1,000,000 rows", 60000, throughput},
    };
    int failed = 0;
    for (const Criterion& cr : criteria) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.body(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("threw: ") + e.what());
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (ms > cr.budget_ms) check.expect(false, fmt("took %.1f ms, budget %.0f ms", ms, cr.budget_ms));
        const bool ok = check.ok();
        failed += ok ? 0 : 1;
        std::printf("%s  [%d] %s  (%.3f ms)\n", ok ? "PASS" : "FAIL", cr.id, cr.name.c_str(), ms);
        for (const auto& f : check.failures()) std::printf("      %s\n", f.c_str());
        if (check.failed() > check.failures().size()) {
            std::printf("      ... %zu more\n", check.failed() - check.failures().size());
        }
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
