#pragma once

// Citation ledger ingestion: CSV parsing, journal canonicalization, and
// aggregation of journal-to-journal citation rows into per-journal profiles.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace citemetrics {

using Year = int;

// Strips ASCII whitespace from both ends.
std::string_view trim(std::string_view text) noexcept;

// Journal identifiers compare case-insensitively (ASCII) after trimming.
bool same_journal(std::string_view a, std::string_view b) noexcept;

struct JournalLess {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const noexcept;
};

struct CitationRecord {
    std::string citing_journal;
    Year citing_year = 0;
    std::string cited_journal;
    Year cited_year = 0;
    std::int64_t count = 0;

    bool operator==(const CitationRecord&) const = default;
};

// Single-step alias resolution: alias -> canonical journal identifier.
class AliasMap {
public:
    // Throws InputError (with `line`) when the alias equals its canonical,
    // conflicts with an earlier mapping, or would create a chain.
    void add(std::string_view alias, std::string_view canonical, std::size_t line = 0);

    // Trimmed identifier, replaced by its canonical when mapped.
    std::string resolve(std::string_view id) const;

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::map<std::string, std::string, JournalLess>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::string, JournalLess> entries_;
    std::map<std::string, std::size_t, JournalLess> canonicals_;
};

// Citeable items per (journal, year); the impact-factor denominator.
class PublicationCounts {
public:
    struct Key {
        std::string journal;
        Year year = 0;
    };
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const noexcept;
    };

    // Throws InputError on non-positive counts or a duplicate key.
    void add(std::string_view journal, Year year, std::int64_t citeable_items, std::size_t line = 0);

    std::optional<std::int64_t> find(std::string_view journal, Year year) const;

    std::size_t size() const noexcept { return items_.size(); }
    const std::map<Key, std::int64_t, KeyLess>& entries() const noexcept { return items_; }

private:
    std::map<Key, std::int64_t, KeyLess> items_;
};

struct CellKey {
    Year cited_year = 0;
    Year citing_year = 0;

    auto operator<=>(const CellKey&) const = default;
};

struct CellCounts {
    std::int64_t total = 0;
    std::int64_t self = 0;

    bool operator==(const CellCounts&) const = default;
};

// Every citation a journal received, keyed by (cited year, citing year).
struct CitationProfile {
    std::string journal;
    std::map<CellKey, CellCounts> cells;

    const CellCounts* find(Year cited_year, Year citing_year) const;
    std::int64_t total() const;
    std::optional<Year> first_cited_year() const;
    std::optional<Year> last_citing_year() const;
    // Distinct cited (publication) years, ascending.
    std::vector<Year> cited_years() const;

    bool operator==(const CitationProfile&) const = default;
};

using ProfileMap = std::map<std::string, CitationProfile, JournalLess>;

// Parsers. Text may use LF or CRLF and may start with a UTF-8 BOM; blank
// lines are skipped. Errors carry the 1-based line number.
std::vector<CitationRecord> parse_citation_csv(std::string_view text, const AliasMap& aliases = {});
std::vector<CitationRecord> parse_citation_csv(std::istream& in, const AliasMap& aliases = {});
AliasMap parse_alias_csv(std::string_view text);
AliasMap parse_alias_csv(std::istream& in);
PublicationCounts parse_publication_csv(std::string_view text);
PublicationCounts parse_publication_csv(std::istream& in);

ProfileMap build_profiles(std::span<const CitationRecord> records);

// Sum of record counts.
std::int64_t total_count(std::span<const CitationRecord> records);
// Sum of cell totals over every profile.
std::int64_t total_count(const ProfileMap& profiles);

// Self citations over total citations received in `citing_year` by the
// given cited years. Throws MetricError(UndefinedRate) when the total is 0.
double self_reference_rate(const CitationProfile& profile, Year citing_year,
                           std::span<const Year> cited_years);

CitationProfile strip_self_references(const CitationProfile& profile);
ProfileMap strip_self_references(const ProfileMap& profiles);

// Citing journal written for non-self rows when profiles are serialized.
inline constexpr std::string_view kOtherJournal = "(other)";

// One row per cell and self/non-self split. Zero-count splits are omitted
// unless the whole cell is zero, which keeps re-parsing lossless.
void write_citation_csv(std::ostream& out, const ProfileMap& profiles);
void write_publication_csv(std::ostream& out, const PublicationCounts& pubs);

}  // namespace citemetrics
