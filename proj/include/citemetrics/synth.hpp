#pragma once

// Deterministic synthetic journals: a citation kernel over ages, volume
// sizes, injected self-citations and spikes, expanded into a citation
// profile. expected_metrics() gives the closed-form indicators for specs
// without perturbations, independently of the metrics pipeline.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citemetrics/ledger.hpp"
#include "citemetrics/metrics.hpp"

namespace citemetrics {

// Relative citation weight by age.
//   flat:L                       w(a) = 1
//   geometric:p:L                w(a) = p^a
//   risedecay:peak:rise:decay:L  w(a) = ((a+1)/(peak+1))^rise up to the peak,
//                                       decay^(a-peak) after it
// and w(a) = 0 for a >= L.
struct Kernel {
    enum class Shape { Flat, Geometric, RiseDecay };

    Shape shape = Shape::Flat;
    int length = 1;
    double rate = 0.5;
    int peak = 0;
    double rise = 1.0;
    double decay = 0.5;

    double weight(int age) const;
    std::string to_string() const;
    void validate() const;  // throws ConfigError

    static Kernel parse(std::string_view text);  // throws ConfigError
    static Kernel flat(int length);
    static Kernel geometric(double rate, int length);
    static Kernel rise_decay(int peak, double rise, double decay, int length);
};

struct Spike {
    Year pub_year = 0;
    int age = 0;
    std::int64_t extra = 0;
};

struct SynthSpec {
    std::string journal;
    Year first_pub_year = 0;
    Year last_pub_year = 0;
    Kernel kernel;
    double base_citations = 1.0;
    std::map<Year, double> volume_scale;  // missing years scale by 1
    double self_fraction = 0.0;
    std::map<std::pair<Year, int>, double> self_overrides;  // (pub_year, age)
    std::vector<Spike> spikes;
    std::int64_t items_per_year = 1;
    Year observation_end = 0;

    double scale(Year pub_year) const;
    double self_fraction_at(Year pub_year, int age) const;
    void validate() const;  // throws ConfigError
};

// `key = value` lines, '#' comments. Repeated keys: scale, self, spike.
// Throws InputError carrying the line number.
SynthSpec parse_synth_spec(std::string_view text);
std::string write_synth_spec(const SynthSpec& spec);

struct GeneratedLedger {
    CitationProfile profile;
    PublicationCounts publications;
};

// cell (y, y+a): total = round(base * scale(y) * w(a)) + spike(y, a),
// self = round(total * self_fraction(y, a)); citing years after
// observation_end and zero cells are omitted.
GeneratedLedger generate_profile(const SynthSpec& spec);

// Closed-form indicators plus worst-case intervals accounting for the
// per-cell rounding in generate_profile(). The half-life is evaluated at
// eval_year = observation_end.
struct ExpectedMetrics {
    Year eval_year = 0;
    double coverage = 0.0;
    double coverage_low = 0.0;
    double coverage_high = 0.0;
    double half_life = 0.0;
    double half_life_low = 0.0;
    double half_life_high = 0.0;
    double scaling_factor = 0.0;
    bool exact = false;  // every base * scale * w(a) is an integer
};

// Throws MetricError(OracleRefused) for specs with spikes, unequal volume
// scales, no volume published in observation_end, or fewer than
// max(horizon, L - 1) observed years after the first volume.
ExpectedMetrics expected_metrics(const SynthSpec& spec, const WindowPolicy& policy = {});

}  // namespace citemetrics
