#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/entity.hpp"
#include "citerank/percentile.hpp"

namespace citerank::synth {

/// Citation law of one subject category: floor(exp(Normal(mu, sigma))),
/// replaced by 0 with probability zero_prob.
struct FieldProfile {
  std::string category;
  std::int64_t n_records = 1;
  double mu = 1.0;
  double sigma = 1.0;
  double zero_prob = 0.0;
};

struct CountryProfile {
  std::string code;
  std::map<std::string, double> share;  // category -> share of that field's records
  double quality_shift = 0.0;           // added to mu
  double collab_prob = 0.0;             // P(one co-author country)
  double trilateral_prob = 0.0;         // P(two co-author countries)
  double collab_boost = 0.0;            // added to mu per co-author country
};

struct SynthSpec {
  std::vector<FieldProfile> fields;
  std::vector<CountryProfile> countries;
  std::vector<int> years{2019};
  std::string rest_of_world = "ROW";
  std::uint64_t seed = 1;
  Date retrieval_date = Date{std::chrono::year{2021}, std::chrono::month{3}, std::chrono::day{6}};

  /// Throws Error on invalid sizes, probabilities or shares.
  void validate() const;
};

/// Parses the key-value configuration format:
///
///     seed = 42
///     years = 2018,2019
///     field.A.n = 10000
///     field.A.mu = 2.0
///     country.US.share.A = 0.3
///     country.US.collab_prob = 0.1
///
/// Field order is the order of first mention.
SynthSpec parse_spec(std::string_view text);
SynthSpec load_spec(const std::string& path);

/// Deterministic in (spec, seed): records are generated in fixed-size blocks,
/// each with its own derived seed, so the worker count never changes output.
Corpus generate(const SynthSpec& spec, unsigned workers = 1);

struct FieldDivergence {
  std::string category;
  std::int64_t n = 0;
  double raw_share = 0.0;      // share of the raw top class
  double refined_share = 0.0;  // share of the refined top class
  double gap = 0.0;            // raw_share - refined_share
};

struct CountryDivergence {
  std::string code;
  double n = 0.0;
  double raw_share = 0.0;
  double refined_share = 0.0;
  double pp_raw = 0.0;
  double pp_refined = 0.0;
};

struct DivergenceReport {
  std::int64_t raw_top_size = 0;
  std::int64_t refined_top_size = 0;
  std::vector<FieldDivergence> fields;
  std::vector<CountryDivergence> countries;
};

/// Compares the raw top-k% class against the category-refined one on an
/// already generated corpus. Entities are the spec's countries plus the
/// rest-of-world code.
DivergenceReport divergence_report(const Corpus& corpus, const SynthSpec& spec, Percent k,
                                   unsigned workers = 1);

DivergenceReport normalization_divergence_experiment(const SynthSpec& spec, Percent k,
                                                     unsigned workers = 1);

}  // namespace citerank::synth
