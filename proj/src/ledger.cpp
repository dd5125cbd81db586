#include "citemetrics/ledger.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "citemetrics/error.hpp"
#include "citemetrics/kernels.hpp"
#include "text_util.hpp"

namespace citemetrics {

namespace {

constexpr std::string_view kCitationHeader = "citing_journal,citing_year,cited_journal,cited_year,count";
constexpr std::string_view kAliasHeader = "alias,canonical";
constexpr std::string_view kPublicationHeader = "journal,year,citeable_items";

constexpr bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

constexpr char fold(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

int compare_journals(std::string_view a, std::string_view b) noexcept {
    a = trim(a);
    b = trim(b);
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto ca = static_cast<unsigned char>(fold(a[i]));
        const auto cb = static_cast<unsigned char>(fold(b[i]));
        if (ca != cb) return ca < cb ? -1 : 1;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

// Reads the header line and checks it verbatim; returns false on empty input.
bool expect_header(detail::LineReader& reader, std::string_view header) {
    std::string_view line;
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        if (line != header) {
            throw InputError(reader.line_number(), "expected header '" + std::string(header) + "'");
        }
        return true;
    }
    return false;
}

std::string_view journal_field(std::string_view raw, std::size_t line, const char* column) {
    const std::string_view id = trim(raw);
    if (id.empty()) throw InputError(line, std::string("empty ") + column);
    return id;
}

}  // namespace

std::string_view trim(std::string_view text) noexcept {
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

bool same_journal(std::string_view a, std::string_view b) noexcept { return compare_journals(a, b) == 0; }

bool JournalLess::operator()(std::string_view a, std::string_view b) const noexcept {
    return compare_journals(a, b) < 0;
}

// ---------------------------------------------------------------------------
// AliasMap

void AliasMap::add(std::string_view alias, std::string_view canonical, std::size_t line) {
    alias = trim(alias);
    canonical = trim(canonical);
    if (alias.empty() || canonical.empty()) throw InputError(line, "empty journal identifier");
    if (same_journal(alias, canonical)) throw InputError(line, "alias equals its canonical identifier");

    if (auto it = entries_.find(alias); it != entries_.end()) {
        if (same_journal(it->second, canonical)) return;
        throw InputError(line, "alias '" + std::string(alias) + "' already maps to '" + it->second + "'");
    }
    if (canonicals_.contains(alias)) {
        throw InputError(line, "'" + std::string(alias) + "' is already a canonical identifier (alias chains not allowed)");
    }
    if (entries_.contains(canonical)) {
        throw InputError(line, "'" + std::string(canonical) + "' is itself an alias (alias chains not allowed)");
    }
    entries_.emplace(std::string(alias), std::string(canonical));
    ++canonicals_[std::string(canonical)];
}

std::string AliasMap::resolve(std::string_view id) const {
    id = trim(id);
    if (!entries_.empty()) {
        if (auto it = entries_.find(id); it != entries_.end()) return it->second;
    }
    return std::string(id);
}

// ---------------------------------------------------------------------------
// PublicationCounts

bool PublicationCounts::KeyLess::operator()(const Key& a, const Key& b) const noexcept {
    const int c = compare_journals(a.journal, b.journal);
    if (c != 0) return c < 0;
    return a.year < b.year;
}

void PublicationCounts::add(std::string_view journal, Year year, std::int64_t citeable_items, std::size_t line) {
    journal = trim(journal);
    if (journal.empty()) throw InputError(line, "empty journal identifier");
    if (citeable_items < 1) throw InputError(line, "citeable_items must be positive");
    const auto [it, inserted] = items_.emplace(Key{std::string(journal), year}, citeable_items);
    if (!inserted) {
        throw InputError(line, "duplicate entry for (" + std::string(journal) + ", " + std::to_string(year) + ")");
    }
}

std::optional<std::int64_t> PublicationCounts::find(std::string_view journal, Year year) const {
    const auto it = items_.find(Key{std::string(trim(journal)), year});
    if (it == items_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// CitationProfile

const CellCounts* CitationProfile::find(Year cited_year, Year citing_year) const {
    const auto it = cells.find(CellKey{cited_year, citing_year});
    return it == cells.end() ? nullptr : &it->second;
}

std::int64_t CitationProfile::total() const {
    std::int64_t sum = 0;
    for (const auto& [key, counts] : cells) sum += counts.total;
    return sum;
}

std::optional<Year> CitationProfile::first_cited_year() const {
    if (cells.empty()) return std::nullopt;
    return cells.begin()->first.cited_year;
}

std::optional<Year> CitationProfile::last_citing_year() const {
    if (cells.empty()) return std::nullopt;
    Year last = cells.begin()->first.citing_year;
    for (const auto& [key, counts] : cells) last = std::max(last, key.citing_year);
    return last;
}

std::vector<Year> CitationProfile::cited_years() const {
    std::vector<Year> years;
    for (const auto& [key, counts] : cells) {
        if (years.empty() || years.back() != key.cited_year) years.push_back(key.cited_year);
    }
    return years;
}

// ---------------------------------------------------------------------------
// Parsers

std::vector<CitationRecord> parse_citation_csv(std::string_view text, const AliasMap& aliases) {
    std::vector<CitationRecord> records;
    detail::LineReader reader(text);
    if (!expect_header(reader, kCitationHeader)) return records;

    std::vector<std::string_view> fields;
    std::string_view line;
    while (reader.next(line)) {
        const std::size_t n = reader.line_number();
        if (trim(line).empty()) continue;
        detail::split_fields(line, fields);
        if (fields.size() != 5) {
            throw InputError(n, "expected 5 columns, found " + std::to_string(fields.size()));
        }
        const std::string_view citing = journal_field(fields[0], n, "citing_journal");
        const std::string_view cited = journal_field(fields[2], n, "cited_journal");
        const auto citing_year = detail::parse_year(fields[1]);
        if (!citing_year) throw InputError(n, "citing_year is not a 4-digit year");
        const auto cited_year = detail::parse_year(fields[3]);
        if (!cited_year) throw InputError(n, "cited_year is not a 4-digit year");
        const auto count = detail::parse_int(fields[4]);
        if (!count) throw InputError(n, "count is not an integer");
        if (*count < 0) throw InputError(n, "negative count");
        if (*citing_year < *cited_year) throw InputError(n, "citing precedes cited");

        records.push_back(CitationRecord{aliases.resolve(citing), *citing_year, aliases.resolve(cited), *cited_year, *count});
    }
    return records;
}

std::vector<CitationRecord> parse_citation_csv(std::istream& in, const AliasMap& aliases) {
    const std::string text = detail::read_all(in);
    return parse_citation_csv(std::string_view(text), aliases);
}

AliasMap parse_alias_csv(std::string_view text) {
    AliasMap map;
    detail::LineReader reader(text);
    if (!expect_header(reader, kAliasHeader)) return map;

    std::vector<std::string_view> fields;
    std::string_view line;
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        detail::split_fields(line, fields);
        if (fields.size() != 2) {
            throw InputError(reader.line_number(), "expected 2 columns, found " + std::to_string(fields.size()));
        }
        map.add(fields[0], fields[1], reader.line_number());
    }
    return map;
}

AliasMap parse_alias_csv(std::istream& in) {
    const std::string text = detail::read_all(in);
    return parse_alias_csv(std::string_view(text));
}

PublicationCounts parse_publication_csv(std::string_view text) {
    PublicationCounts pubs;
    detail::LineReader reader(text);
    if (!expect_header(reader, kPublicationHeader)) return pubs;

    std::vector<std::string_view> fields;
    std::string_view line;
    while (reader.next(line)) {
        const std::size_t n = reader.line_number();
        if (trim(line).empty()) continue;
        detail::split_fields(line, fields);
        if (fields.size() != 3) throw InputError(n, "expected 3 columns, found " + std::to_string(fields.size()));
        const auto year = detail::parse_year(fields[1]);
        if (!year) throw InputError(n, "year is not a 4-digit year");
        const auto items = detail::parse_int(fields[2]);
        if (!items) throw InputError(n, "citeable_items is not an integer");
        pubs.add(journal_field(fields[0], n, "journal"), *year, *items, n);
    }
    return pubs;
}

PublicationCounts parse_publication_csv(std::istream& in) {
    const std::string text = detail::read_all(in);
    return parse_publication_csv(std::string_view(text));
}

// ---------------------------------------------------------------------------
// Aggregation

ProfileMap build_profiles(std::span<const CitationRecord> records) {
    ProfileMap profiles;
    for (const CitationRecord& r : records) {
        auto it = profiles.find(r.cited_journal);
        if (it == profiles.end()) {
            it = profiles.emplace(r.cited_journal, CitationProfile{r.cited_journal, {}}).first;
        }
        CellCounts& cell = it->second.cells[CellKey{r.cited_year, r.citing_year}];
        cell.total += r.count;
        if (same_journal(r.citing_journal, r.cited_journal)) cell.self += r.count;
    }
    return profiles;
}

std::int64_t total_count(std::span<const CitationRecord> records) {
    std::vector<std::int64_t> counts;
    counts.reserve(records.size());
    for (const CitationRecord& r : records) counts.push_back(r.count);
    return kernels::sum_i64(counts);
}

std::int64_t total_count(const ProfileMap& profiles) {
    std::vector<std::int64_t> totals;
    for (const auto& [name, profile] : profiles) {
        for (const auto& [key, counts] : profile.cells) totals.push_back(counts.total);
    }
    return kernels::sum_i64(totals);
}

double self_reference_rate(const CitationProfile& profile, Year citing_year, std::span<const Year> cited_years) {
    const std::set<Year> wanted(cited_years.begin(), cited_years.end());
    std::int64_t self = 0;
    std::int64_t total = 0;
    for (const Year year : wanted) {
        if (const CellCounts* cell = profile.find(year, citing_year)) {
            self += cell->self;
            total += cell->total;
        }
    }
    if (total == 0) {
        throw MetricError(MetricErrorKind::UndefinedRate,
                          "no citations from " + std::to_string(citing_year) + " to the selected volumes of " + profile.journal);
    }
    return static_cast<double>(self) / static_cast<double>(total);
}

CitationProfile strip_self_references(const CitationProfile& profile) {
    CitationProfile stripped{profile.journal, {}};
    for (const auto& [key, counts] : profile.cells) {
        stripped.cells.emplace_hint(stripped.cells.end(), key, CellCounts{counts.total - counts.self, 0});
    }
    return stripped;
}

ProfileMap strip_self_references(const ProfileMap& profiles) {
    ProfileMap out;
    for (const auto& [name, profile] : profiles) out.emplace_hint(out.end(), name, strip_self_references(profile));
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

void write_citation_csv(std::ostream& out, const ProfileMap& profiles) {
    out << kCitationHeader << '\n';
    for (const auto& [name, profile] : profiles) {
        if (same_journal(profile.journal, kOtherJournal)) {
            throw std::invalid_argument("journal name '" + profile.journal + "' is reserved for external citers");
        }
        for (const auto& [key, counts] : profile.cells) {
            if (counts.self > 0) {
                out << profile.journal << ',' << key.citing_year << ',' << profile.journal << ',' << key.cited_year << ','
                    << counts.self << '\n';
            }
            const std::int64_t other = counts.total - counts.self;
            if (other > 0 || counts.total == 0) {
                out << kOtherJournal << ',' << key.citing_year << ',' << profile.journal << ',' << key.cited_year << ','
                    << other << '\n';
            }
        }
    }
}

void write_publication_csv(std::ostream& out, const PublicationCounts& pubs) {
    out << kPublicationHeader << '\n';
    for (const auto& [key, items] : pubs.entries()) out << key.journal << ',' << key.year << ',' << items << '\n';
}

}  // namespace citemetrics
