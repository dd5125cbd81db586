#include "citemetrics/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "citemetrics/error.hpp"
#include "text_util.hpp"

namespace citemetrics {

namespace {

std::vector<std::string_view> split_on(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        parts.push_back(trim(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
        if (at == std::string_view::npos) return parts;
        start = at + 1;
    }
}

double need_double(std::string_view text, const char* what) {
    const auto v = detail::parse_double(text);
    if (!v || !std::isfinite(*v)) throw ConfigError(std::string(what) + " is not a number: '" + std::string(text) + "'");
    return *v;
}

std::int64_t need_int(std::string_view text, const char* what) {
    const auto v = detail::parse_int(text);
    if (!v) throw ConfigError(std::string(what) + " is not an integer: '" + std::string(text) + "'");
    return *v;
}

Year need_year(std::string_view text, const char* what) {
    const auto v = detail::parse_year(text);
    if (!v) throw ConfigError(std::string(what) + " is not a 4-digit year: '" + std::string(text) + "'");
    return *v;
}

std::int64_t round_half_away(double x) { return std::llround(x); }

bool is_integral(long double x) { return std::fabs(x - std::round(x)) < 1e-9L; }

// Smallest x with F(x) >= target, F the piecewise-linear cumulative of c.
long double lower_inverse(const std::vector<long double>& c, long double target) {
    if (target <= 0) return 0;
    long double before = 0;
    for (std::size_t a = 0; a < c.size(); ++a) {
        if (c[a] > 0 && before + c[a] >= target) return static_cast<long double>(a) + (target - before) / c[a];
        before += c[a];
    }
    return static_cast<long double>(c.size());
}

// Largest x with F(x) <= target.
long double upper_inverse(const std::vector<long double>& c, long double target) {
    long double before = 0;
    for (std::size_t a = 0; a < c.size(); ++a) {
        if (c[a] > 0 && before + c[a] > target) return static_cast<long double>(a) + std::max<long double>(0, target - before) / c[a];
        before += c[a];
    }
    return static_cast<long double>(c.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernel

double Kernel::weight(int age) const {
    if (age < 0 || age >= length) return 0.0;
    switch (shape) {
        case Shape::Flat: return 1.0;
        case Shape::Geometric: return std::pow(rate, age);
        case Shape::RiseDecay:
            if (age <= peak) return std::pow(static_cast<double>(age + 1) / static_cast<double>(peak + 1), rise);
            return std::pow(decay, age - peak);
    }
    return 0.0;
}

std::string Kernel::to_string() const {
    using detail::format_number;
    switch (shape) {
        case Shape::Flat: return "flat:" + std::to_string(length);
        case Shape::Geometric: return "geometric:" + format_number(rate) + ":" + std::to_string(length);
        case Shape::RiseDecay:
            return "risedecay:" + std::to_string(peak) + ":" + format_number(rise) + ":" + format_number(decay) + ":" +
                   std::to_string(length);
    }
    return "?";
}

void Kernel::validate() const {
    if (length < 1) throw ConfigError("kernel length must be at least 1");
    if (shape == Shape::Geometric && !(rate > 0.0 && rate < 1.0)) throw ConfigError("geometric rate must be in (0, 1)");
    if (shape == Shape::RiseDecay) {
        if (peak < 0 || peak >= length) throw ConfigError("risedecay peak must lie inside the kernel length");
        if (!(rise >= 0.0)) throw ConfigError("risedecay rise must be non-negative");
        if (!(decay > 0.0 && decay <= 1.0)) throw ConfigError("risedecay decay must be in (0, 1]");
    }
}

Kernel Kernel::parse(std::string_view text) {
    const auto parts = split_on(trim(text), ':');
    const std::string_view name = parts.front();
    auto expect = [&](std::size_t n) {
        if (parts.size() != n) throw ConfigError("kernel '" + std::string(text) + "' has the wrong number of fields");
    };
    Kernel k;
    if (name == "flat") {
        expect(2);
        k = flat(static_cast<int>(need_int(parts[1], "kernel length")));
    } else if (name == "geometric") {
        expect(3);
        k = geometric(need_double(parts[1], "geometric rate"), static_cast<int>(need_int(parts[2], "kernel length")));
    } else if (name == "risedecay") {
        expect(5);
        k = rise_decay(static_cast<int>(need_int(parts[1], "risedecay peak")), need_double(parts[2], "risedecay rise"),
                       need_double(parts[3], "risedecay decay"), static_cast<int>(need_int(parts[4], "kernel length")));
    } else {
        throw ConfigError("unknown kernel '" + std::string(name) + "'");
    }
    k.validate();
    return k;
}

Kernel Kernel::flat(int length) {
    Kernel k;
    k.shape = Shape::Flat;
    k.length = length;
    return k;
}

Kernel Kernel::geometric(double rate, int length) {
    Kernel k;
    k.shape = Shape::Geometric;
    k.rate = rate;
    k.length = length;
    return k;
}

Kernel Kernel::rise_decay(int peak, double rise, double decay, int length) {
    Kernel k;
    k.shape = Shape::RiseDecay;
    k.peak = peak;
    k.rise = rise;
    k.decay = decay;
    k.length = length;
    return k;
}

// ---------------------------------------------------------------------------
// SynthSpec

double SynthSpec::scale(Year pub_year) const {
    const auto it = volume_scale.find(pub_year);
    return it == volume_scale.end() ? 1.0 : it->second;
}

double SynthSpec::self_fraction_at(Year pub_year, int age) const {
    const auto it = self_overrides.find({pub_year, age});
    return it == self_overrides.end() ? self_fraction : it->second;
}

void SynthSpec::validate() const {
    if (trim(journal).empty()) throw ConfigError("journal name is required");
    if (first_pub_year > last_pub_year) throw ConfigError("pub_years range is empty");
    kernel.validate();
    if (!(base_citations > 0.0)) throw ConfigError("base_citations must be positive");
    for (const auto& [year, s] : volume_scale) {
        if (!(s > 0.0)) throw ConfigError("volume scale for " + std::to_string(year) + " must be positive");
    }
    if (!(self_fraction >= 0.0 && self_fraction <= 1.0)) throw ConfigError("self_fraction must be in [0, 1]");
    for (const auto& [key, f] : self_overrides) {
        if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("self fraction override must be in [0, 1]");
        if (key.second < 0) throw ConfigError("self fraction override age must be non-negative");
    }
    for (const Spike& s : spikes) {
        if (s.age < 0) throw ConfigError("spike age must be non-negative");
        if (s.extra < 0) throw ConfigError("spike count must be non-negative");
    }
    if (items_per_year < 1) throw ConfigError("items_per_year must be positive");
    if (observation_end < last_pub_year) throw ConfigError("observation_end precedes the last publication year");
}

SynthSpec parse_synth_spec(std::string_view text) {
    SynthSpec spec;
    std::set<std::string, std::less<>> seen;
    bool has_end = false;
    detail::LineReader reader(text);
    std::string_view line;
    while (reader.next(line)) {
        const std::size_t n = reader.line_number();
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw InputError(n, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const bool repeatable = key == "scale" || key == "self" || key == "spike";
        if (!repeatable && !seen.insert(std::string(key)).second) {
            throw InputError(n, "duplicate key '" + std::string(key) + "'");
        }
        try {
            if (key == "journal") {
                spec.journal = std::string(value);
            } else if (key == "pub_years") {
                const auto parts = split_on(value, '-');
                if (parts.size() > 2) throw ConfigError("pub_years must be YEAR or YEAR-YEAR");
                spec.first_pub_year = need_year(parts.front(), "pub_years");
                spec.last_pub_year = need_year(parts.back(), "pub_years");
            } else if (key == "kernel") {
                spec.kernel = Kernel::parse(value);
            } else if (key == "base_citations") {
                spec.base_citations = need_double(value, "base_citations");
            } else if (key == "self_fraction") {
                spec.self_fraction = need_double(value, "self_fraction");
            } else if (key == "items_per_year") {
                spec.items_per_year = need_int(value, "items_per_year");
            } else if (key == "observation_end") {
                spec.observation_end = need_year(value, "observation_end");
                has_end = true;
            } else if (key == "scale") {
                const auto parts = split_on(value, ',');
                if (parts.size() != 2) throw ConfigError("scale must be 'year,factor'");
                spec.volume_scale[need_year(parts[0], "scale year")] = need_double(parts[1], "scale factor");
            } else if (key == "self") {
                const auto parts = split_on(value, ',');
                if (parts.size() != 3) throw ConfigError("self must be 'year,age,fraction'");
                spec.self_overrides[{need_year(parts[0], "self year"), static_cast<int>(need_int(parts[1], "self age"))}] =
                    need_double(parts[2], "self fraction");
            } else if (key == "spike") {
                const auto parts = split_on(value, ',');
                if (parts.size() != 3) throw ConfigError("spike must be 'year,age,count'");
                spec.spikes.push_back(Spike{need_year(parts[0], "spike year"), static_cast<int>(need_int(parts[1], "spike age")),
                                            need_int(parts[2], "spike count")});
            } else {
                throw ConfigError("unknown key '" + std::string(key) + "'");
            }
        } catch (const ConfigError& e) {
            throw InputError(n, e.what());
        }
    }
    for (const char* required : {"journal", "pub_years", "kernel", "base_citations", "items_per_year"}) {
        if (!seen.contains(std::string_view(required))) throw InputError(0, std::string("missing required key '") + required + "'");
    }
    if (!has_end) spec.observation_end = spec.last_pub_year;
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw InputError(0, e.what());
    }
    return spec;
}

std::string write_synth_spec(const SynthSpec& spec) {
    using detail::format_number;
    std::ostringstream out;
    out << "journal = " << spec.journal << '\n';
    out << "pub_years = " << spec.first_pub_year << '-' << spec.last_pub_year << '\n';
    out << "kernel = " << spec.kernel.to_string() << '\n';
    out << "base_citations = " << format_number(spec.base_citations) << '\n';
    out << "items_per_year = " << spec.items_per_year << '\n';
    out << "observation_end = " << spec.observation_end << '\n';
    out << "self_fraction = " << format_number(spec.self_fraction) << '\n';
    for (const auto& [year, s] : spec.volume_scale) out << "scale = " << year << ',' << format_number(s) << '\n';
    for (const auto& [key, f] : spec.self_overrides) {
        out << "self = " << key.first << ',' << key.second << ',' << format_number(f) << '\n';
    }
    for (const Spike& s : spec.spikes) out << "spike = " << s.pub_year << ',' << s.age << ',' << s.extra << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Generation

GeneratedLedger generate_profile(const SynthSpec& spec) {
    spec.validate();
    GeneratedLedger out;
    out.profile.journal = std::string(trim(spec.journal));

    std::map<CellKey, std::int64_t> totals;
    for (Year y = spec.first_pub_year; y <= spec.last_pub_year; ++y) {
        for (int a = 0; a < spec.kernel.length && y + a <= spec.observation_end; ++a) {
            totals[CellKey{y, y + a}] += round_half_away(spec.base_citations * spec.scale(y) * spec.kernel.weight(a));
        }
    }
    for (const Spike& s : spec.spikes) {
        if (s.pub_year + s.age <= spec.observation_end) totals[CellKey{s.pub_year, s.pub_year + s.age}] += s.extra;
    }
    for (const auto& [key, total] : totals) {
        if (total == 0) continue;
        const double fraction = spec.self_fraction_at(key.cited_year, key.citing_year - key.cited_year);
        const std::int64_t self = std::min(total, round_half_away(static_cast<double>(total) * fraction));
        out.profile.cells.emplace_hint(out.profile.cells.end(), key, CellCounts{total, self});
    }
    for (Year y = spec.first_pub_year; y <= spec.last_pub_year; ++y) out.publications.add(out.profile.journal, y, spec.items_per_year);
    return out;
}

ExpectedMetrics expected_metrics(const SynthSpec& spec, const WindowPolicy& policy) {
    spec.validate();
    policy.validate();
    if (!spec.spikes.empty()) throw MetricError(MetricErrorKind::OracleRefused, "oracle requires a spec without spikes");
    double uniform = spec.scale(spec.first_pub_year);
    for (Year y = spec.first_pub_year; y <= spec.last_pub_year; ++y) {
        if (spec.scale(y) != uniform) throw MetricError(MetricErrorKind::OracleRefused, "oracle requires uniform volume scales");
    }
    if (spec.last_pub_year != spec.observation_end) {
        throw MetricError(MetricErrorKind::OracleRefused, "oracle requires a volume published in observation_end");
    }
    const int needed = std::max(policy.horizon, spec.kernel.length - 1);
    if (spec.observation_end - spec.first_pub_year < needed) {
        throw MetricError(MetricErrorKind::OracleRefused,
                          "oracle requires at least " + std::to_string(needed) + " observed years after the first volume");
    }

    ExpectedMetrics m;
    m.eval_year = spec.observation_end;
    const long double b = static_cast<long double>(spec.base_citations) * uniform;

    // Per-age expected counts and their worst-case rounding slack.
    const int ages = std::max(policy.horizon + 1, spec.kernel.length);
    std::vector<long double> weight(static_cast<std::size_t>(ages));
    std::vector<long double> slack(static_cast<std::size_t>(ages));
    m.exact = true;
    for (int a = 0; a < ages; ++a) {
        const long double w = static_cast<long double>(spec.kernel.weight(a));
        weight[static_cast<std::size_t>(a)] = w;
        const bool integral = is_integral(b * w);
        slack[static_cast<std::size_t>(a)] = integral ? 0.0L : 0.5L;
        m.exact = m.exact && integral;
    }

    const std::set<int> window(policy.window_ages.begin(), policy.window_ages.end());
    long double in_window = 0, rest = 0, in_slack = 0, rest_slack = 0;
    for (int a = 0; a <= policy.horizon; ++a) {
        const auto i = static_cast<std::size_t>(a);
        if (window.contains(a)) {
            in_window += weight[i];
            in_slack += slack[i];
        } else {
            rest += weight[i];
            rest_slack += slack[i];
        }
    }
    m.coverage = static_cast<double>(in_window) / static_cast<double>(in_window + rest);
    const long double nw = b * in_window, nr = b * rest;
    const long double low_n = std::max<long double>(0, nw - in_slack);
    const long double high_n = nw + in_slack;
    const long double low_r = std::max<long double>(0, nr - rest_slack);
    const long double high_r = nr + rest_slack;
    m.coverage_low = static_cast<double>(low_n + high_r > 0 ? low_n / (low_n + high_r) : 0);
    m.coverage_high = static_cast<double>(high_n + low_r > 0 ? high_n / (high_n + low_r) : 1);
    m.scaling_factor = policy.target_quantile / m.coverage;

    // Median of the citing-year distribution at observation_end: every age
    // 0..L-1 is observed there, each with weight w(a).
    const std::vector<long double> kernel_weights(weight.begin(), weight.begin() + spec.kernel.length);
    long double total = 0, total_slack = 0;
    for (int a = 0; a < spec.kernel.length; ++a) {
        total += kernel_weights[static_cast<std::size_t>(a)];
        total_slack += slack[static_cast<std::size_t>(a)];
    }
    m.half_life = static_cast<double>(lower_inverse(kernel_weights, 0.5L * total));

    std::vector<long double> counts(kernel_weights.size());
    for (std::size_t a = 0; a < counts.size(); ++a) counts[a] = b * kernel_weights[a];
    const long double spread = 1.5L * total_slack;  // |q dT| + |dF| with q = 0.5
    m.half_life_low = static_cast<double>(lower_inverse(counts, 0.5L * b * total - spread));
    m.half_life_high = static_cast<double>(upper_inverse(counts, 0.5L * b * total + spread));
    return m;
}

}  // namespace citemetrics
