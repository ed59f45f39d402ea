#include "citerank/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "citerank/parallel.hpp"

namespace citerank {

EntityCounts count_entity(const CorpusView& view, const TopClass& top, const EntityMatcher& entity,
                          CountingMethod method, unsigned workers) {
  const auto indices = view.indices();
  std::vector<EntityCounts> parts(chunk_count(indices.size(), workers));
  for_each_chunk(indices.size(), workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& part = parts[chunk];
    for (std::size_t p = begin; p < end; ++p) {
      const auto i = indices[p];
      entity.credit(i, method, part.n);
      if (top.contains(i)) entity.credit(i, method, part.p_topk);
    }
  });
  EntityCounts total;
  for (const auto& part : parts) {
    total.n += part.n;
    total.p_topk += part.p_topk;
  }
  return total;
}

double p_topk(const CorpusView& view, const TopClass& top, const EntityMatcher& entity, CountingMethod method) {
  CreditTally tally;
  for (Corpus::Index i : view.indices()) {
    if (top.contains(i)) entity.credit(i, method, tally);
  }
  return tally.value();
}

double expected_topk(double n, Percent k) {
  if (n < 0) throw Error("negative set size");
  return k.share_of(n);
}

double pp_topk(double observed, double expected) {
  if (expected == 0.0) throw Error("PP-top-k% undefined: expected count is 0");
  return observed / expected;
}

RankClasses RankClasses::percentiles() {
  RankClasses c;
  for (int i = 0; i < 100; ++i) {
    c.lower_bounds.push_back(i);
    c.values.push_back(i);
  }
  return c;
}

RankClasses RankClasses::top_vs_rest(Percent k) {
  return RankClasses{{0.0, 100.0 - k.value()}, {0.0, 1.0}};
}

std::size_t RankClasses::classify(double rank) const {
  auto it = std::upper_bound(lower_bounds.begin(), lower_bounds.end(), rank);
  return it == lower_bounds.begin() ? 0 : static_cast<std::size_t>(it - lower_bounds.begin()) - 1;
}

namespace {

bool integral_values(const RankClasses& classes) {
  return std::all_of(classes.values.begin(), classes.values.end(),
                     [](double v) { return v >= 0 && v == std::floor(v) && v < 1e15; });
}

double weighted_sum(const std::vector<CreditTally>& per_class, const RankClasses& classes) {
  if (integral_values(classes)) {
    CreditTally combined;
    for (std::size_t c = 0; c < per_class.size(); ++c) {
      combined += per_class[c].scaled(static_cast<std::uint64_t>(classes.values[c]));
    }
    return combined.value();
  }
  long double total = 0;
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    total += static_cast<long double>(per_class[c].value()) * classes.values[c];
  }
  return static_cast<double>(total);
}

}  // namespace

double i3(const RankAssignment& ranks, std::span<const Corpus::Index> subset, const RankClasses& classes) {
  std::vector<std::uint64_t> freq(classes.values.size(), 0);
  for (Corpus::Index i : subset) {
    const auto rank = ranks.rank_of(i);
    if (!rank) throw Error("record outside the ranked reference set");
    ++freq[classes.classify(*rank)];
  }
  if (integral_values(classes)) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < freq.size(); ++c) total += freq[c] * static_cast<std::uint64_t>(classes.values[c]);
    return static_cast<double>(total);
  }
  long double total = 0;
  for (std::size_t c = 0; c < freq.size(); ++c) total += static_cast<long double>(freq[c]) * classes.values[c];
  return static_cast<double>(total);
}

double i3(const RankAssignment& ranks, const EntityMatcher& entity, CountingMethod method,
          const RankClasses& classes) {
  std::vector<CreditTally> per_class(classes.values.size());
  const auto records = ranks.records();
  const auto values = ranks.ranks();
  for (std::size_t p = 0; p < records.size(); ++p) {
    entity.credit(records[p], method, per_class[classes.classify(values[p])]);
  }
  return weighted_sum(per_class, classes);
}

double pct_i3(double i3_subset, double i3_reference) {
  if (i3_reference == 0.0) throw Error("%I3 undefined: reference I3 is 0");
  return 100.0 * i3_subset / i3_reference;
}

IndicatorTable compute_indicators(const CorpusView& reference, std::span<const std::string> entities,
                                  const BlocMap* blocs, const IndicatorOptions& options) {
  IndicatorTable table;
  table.threshold = top_class_threshold(reference, options.k, options.workers);
  const TopClass top(reference, table.threshold);

  std::optional<RankAssignment> ranks;
  double reference_i3 = 0.0;
  if (options.with_i3) {
    ranks = percentile_ranks(reference, options.scheme);
    reference_i3 = i3(*ranks, reference.indices());
  }

  for (const auto& code : entities) {
    const EntityMatcher entity(reference.corpus(), code, blocs);
    const auto counts = count_entity(reference, top, entity, options.counting, options.workers);
    IndicatorReport row;
    row.label = code;
    row.n = counts.n.value();
    row.p_topk = counts.p_topk.value();
    row.expected = expected_topk(row.n, options.k);
    row.pp_topk = row.expected > 0 ? pp_topk(row.p_topk, row.expected) : 0.0;
    if (ranks) {
      row.i3 = i3(*ranks, entity, options.counting);
      if (reference_i3 > 0) row.pct_i3 = pct_i3(*row.i3, reference_i3);
    }
    table.rows.push_back(std::move(row));
  }

  IndicatorReport world;
  world.label = "World";
  world.n = static_cast<double>(reference.size());
  world.p_topk = static_cast<double>(table.threshold.actual_size);
  world.expected = expected_topk(world.n, options.k);
  world.pp_topk = pp_topk(world.p_topk, world.expected);
  if (ranks) {
    world.i3 = reference_i3;
    if (reference_i3 > 0) world.pct_i3 = 100.0;
  }
  table.rows.push_back(std::move(world));
  return table;
}

namespace {

std::string stratum_key(const Corpus& corpus, Corpus::Index i, CodeId category, Stratification s) {
  std::string key = corpus.category_codes().name(category);
  if (s != Stratification::Category) key += "/" + std::to_string(corpus.year(i));
  if (s == Stratification::CategoryYearDoctype) key += "/" + std::string(to_string(corpus.doctype(i)));
  return key;
}

}  // namespace

std::vector<RcScore> rc_scores(const CorpusView& view, Stratification stratification) {
  const auto& corpus = view.corpus();
  struct Sum {
    std::int64_t citations = 0;
    std::int64_t n = 0;
  };
  std::map<std::string, Sum> strata;
  for (Corpus::Index i : view.indices()) {
    for (CodeId c : corpus.categories(i)) {
      auto& s = strata[stratum_key(corpus, i, c, stratification)];
      s.citations += corpus.citations(i);
      ++s.n;
    }
  }
  for (const auto& [key, s] : strata) {
    if (s.citations == 0) throw Error("stratum '" + key + "' has zero mean citations");
  }
  std::vector<RcScore> scores;
  for (Corpus::Index i : view.indices()) {
    const auto cats = corpus.categories(i);
    if (cats.empty()) continue;
    RcScore score;
    score.record = i;
    double sum = 0.0;
    for (CodeId c : cats) {
      auto key = stratum_key(corpus, i, c, stratification);
      const auto& s = strata.at(key);
      sum += static_cast<double>(corpus.citations(i)) * static_cast<double>(s.n) / static_cast<double>(s.citations);
      if (!score.field_key.empty()) score.field_key += '|';
      score.field_key += key;
    }
    score.rc = sum / static_cast<double>(cats.size());
    scores.push_back(std::move(score));
  }
  return scores;
}

double mncs(std::span<const RcScore> scores) {
  if (scores.empty()) throw Error("MNCS of an empty set");
  long double total = 0;
  for (const auto& s : scores) total += s.rc;
  return static_cast<double>(total / static_cast<long double>(scores.size()));
}

std::vector<double> esi_refined_ranks(const RankAssignment& ranks,
                                      const std::function<std::string(Corpus::Index)>& broad_category_of) {
  const auto records = ranks.records();
  const auto values = ranks.ranks();
  std::vector<std::string> keys(records.size());
  std::map<std::string, std::pair<long double, std::size_t>> sums;
  for (std::size_t p = 0; p < records.size(); ++p) {
    keys[p] = broad_category_of(records[p]);
    auto& s = sums[keys[p]];
    s.first += values[p];
    ++s.second;
  }
  std::map<std::string, double> means;
  for (const auto& [key, s] : sums) {
    const double mean = static_cast<double>(s.first / static_cast<long double>(s.second));
    if (mean == 0.0) throw Error("broad category '" + key + "' has mean percentile rank 0");
    means.emplace(key, mean);
  }
  std::vector<double> refined(records.size());
  for (std::size_t p = 0; p < records.size(); ++p) refined[p] = values[p] / means.at(keys[p]);
  return refined;
}

std::function<std::string(Corpus::Index)> first_category_of(const Corpus& corpus) {
  return [&corpus](Corpus::Index i) {
    const auto cats = corpus.categories(i);
    if (cats.empty()) throw Error("record '" + std::string(corpus.id(i)) + "' has no category");
    return corpus.category_codes().name(cats.front());
  };
}

RefinedScores refine_by_category(const CorpusView& view,
                                 const std::function<std::string(Corpus::Index)>& broad_category_of,
                                 PercentileScheme scheme) {
  auto ranks = percentile_ranks_within(view, scheme, broad_category_of);
  auto scores = esi_refined_ranks(ranks, broad_category_of);
  return RefinedScores{std::move(ranks), std::move(scores)};
}

ScoreTopClass select_top_by_score(std::span<const Corpus::Index> records, std::span<const double> scores,
                                  Percent k) {
  if (records.size() != scores.size()) throw Error("score selection size mismatch");
  if (records.empty()) throw Error("cannot select a top class from an empty set");
  if (k.numerator() <= 0 || k.value() >= 100.0) throw Error("k must lie in (0, 100)");
  ScoreTopClass top;
  top.nominal_rank = k.nominal_rank(static_cast<std::int64_t>(records.size()));
  std::vector<double> sorted(scores.begin(), scores.end());
  const auto nth = sorted.begin() + (top.nominal_rank - 1);
  std::nth_element(sorted.begin(), nth, sorted.end(), std::greater<>());
  top.cutoff = *nth;
  for (std::size_t p = 0; p < records.size(); ++p) {
    if (scores[p] >= top.cutoff) top.members.push_back(records[p]);
  }
  std::sort(top.members.begin(), top.members.end());
  return top;
}

RefinedParticipation refined_pp_topk(const CorpusView& view, const RefinedScores& refined,
                                     const EntityMatcher& entity, Percent k, CountingMethod method) {
  const auto top = select_top_by_score(refined.ranks.records(), refined.scores, k);
  CreditTally n, p;
  for (Corpus::Index i : view.indices()) {
    entity.credit(i, method, n);
    if (std::binary_search(top.members.begin(), top.members.end(), i)) entity.credit(i, method, p);
  }
  RefinedParticipation out;
  out.n = n.value();
  out.p_topk = p.value();
  out.expected = expected_topk(out.n, k);
  out.pp_topk = out.expected > 0 ? out.p_topk / out.expected : 0.0;
  return out;
}

}  // namespace citerank
