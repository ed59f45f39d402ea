#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/credit.hpp"
#include "citerank/entity.hpp"
#include "citerank/filter.hpp"
#include "citerank/percentile.hpp"

namespace citerank {

// ---------------------------------------------------------------------------
// Participation in the top class

/// Entity size and top-class participation, both as exact credit sums.
struct EntityCounts {
  CreditTally n;
  CreditTally p_topk;
};

/// Sums entity credit over the view (n) and over view ∩ top class (P).
EntityCounts count_entity(const CorpusView& view, const TopClass& top, const EntityMatcher& entity,
                          CountingMethod method, unsigned workers = 1);

/// Sum of entity credits over records of `view` in the top class.
double p_topk(const CorpusView& view, const TopClass& top, const EntityMatcher& entity,
              CountingMethod method);

/// n * k / 100, unrounded.
double expected_topk(double n, Percent k);

/// observed / expected. Throws Error when expected == 0.
double pp_topk(double observed, double expected);

// ---------------------------------------------------------------------------
// Integrated impact

/// Percentile-rank classes for I3: class i covers [lower_bounds[i],
/// lower_bounds[i+1]) and carries value values[i].
struct RankClasses {
  std::vector<double> lower_bounds;
  std::vector<double> values;

  /// 100 classes of width 1 valued 0..99 (floored percentile ranks).
  static RankClasses percentiles();
  /// Two classes: rest (value 0) and ranks >= 100 - k (value 1).
  static RankClasses top_vs_rest(Percent k);

  std::size_t classify(double rank) const;
};

/// I3 = sum over classes of class value x class frequency, for the records
/// of `subset` (corpus rows, each present in `ranks`). Empty subset -> 0.
double i3(const RankAssignment& ranks, std::span<const Corpus::Index> subset,
          const RankClasses& classes = RankClasses::percentiles());

/// I3 with each record's frequency weighted by its entity credit.
double i3(const RankAssignment& ranks, const EntityMatcher& entity, CountingMethod method,
          const RankClasses& classes = RankClasses::percentiles());

/// 100 * subset / reference. Throws Error when the reference is zero.
double pct_i3(double i3_subset, double i3_reference);

// ---------------------------------------------------------------------------
// Per-entity bundle

struct IndicatorReport {
  std::string label;
  double n = 0.0;
  double p_topk = 0.0;
  double expected = 0.0;
  double pp_topk = 0.0;
  std::optional<double> i3;
  std::optional<double> pct_i3;
  std::optional<double> mncs;
};

struct IndicatorOptions {
  Percent k{1};
  CountingMethod counting = CountingMethod::WholeNumber;
  PercentileScheme scheme = PercentileScheme::StrictBelow;
  bool with_i3 = true;
  unsigned workers = 1;
};

struct IndicatorTable {
  Threshold threshold;
  /// One row per requested entity, then a "World" row for the whole
  /// reference set (P = actual top-class size).
  std::vector<IndicatorReport> rows;
};

IndicatorTable compute_indicators(const CorpusView& reference, std::span<const std::string> entities,
                                  const BlocMap* blocs, const IndicatorOptions& options);

// ---------------------------------------------------------------------------
// Mean-based baselines

enum class Stratification { Category, CategoryYear, CategoryYearDoctype };

struct RcScore {
  Corpus::Index record = 0;
  std::string field_key;  // '|'-joined stratum keys for multi-category records
  double rc = 0.0;
};

/// Citations divided by the mean citations of the record's stratum. Records
/// in several categories get the mean of their per-category values; records
/// without categories are skipped. Throws Error for a zero-mean stratum.
std::vector<RcScore> rc_scores(const CorpusView& view,
                               Stratification stratification = Stratification::CategoryYear);

/// Mean RC. Throws Error for an empty collection.
double mncs(std::span<const RcScore> scores);

/// Ranks divided by the mean rank of each record's broad category, aligned
/// with ranks.records(). Throws Error when a category's mean rank is 0.
std::vector<double> esi_refined_ranks(const RankAssignment& ranks,
                                      const std::function<std::string(Corpus::Index)>& broad_category_of);

/// First listed category of a record; throws Error if it has none.
std::function<std::string(Corpus::Index)> first_category_of(const Corpus& corpus);

/// Percentile ranks within each broad category, then divided by the
/// category's mean rank.
struct RefinedScores {
  RankAssignment ranks;
  std::vector<double> scores;  // aligned with ranks.records()
};

RefinedScores refine_by_category(const CorpusView& view,
                                 const std::function<std::string(Corpus::Index)>& broad_category_of,
                                 PercentileScheme scheme = PercentileScheme::StrictBelow);

/// Top-k% selected on a real-valued score: the cutoff is the score at
/// descending rank ceil(n k / 100); all records scoring at least that are in.
struct ScoreTopClass {
  std::int64_t nominal_rank = 0;
  double cutoff = 0.0;
  std::vector<Corpus::Index> members;  // ascending
};

ScoreTopClass select_top_by_score(std::span<const Corpus::Index> records,
                                  std::span<const double> scores, Percent k);

struct RefinedParticipation {
  double n = 0.0;
  double p_topk = 0.0;
  double expected = 0.0;
  double pp_topk = 0.0;
};

/// PP-top-k% with the top class chosen by refined score. An entity with no
/// records in the view yields all zeros.
RefinedParticipation refined_pp_topk(const CorpusView& view, const RefinedScores& refined,
                                     const EntityMatcher& entity, Percent k, CountingMethod method);

}  // namespace citerank
