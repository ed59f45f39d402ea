#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/entity.hpp"
#include "citerank/filter.hpp"
#include "citerank/percentile.hpp"

namespace citerank {

struct ComparisonRow {
  std::string label;  // category code, or "World"
  Threshold threshold;
  double n_total = 0.0;
  double n1 = 0.0, n2 = 0.0;
  double p1 = 0.0, p2 = 0.0;
  double pp1 = 0.0, pp2 = 0.0;
  std::optional<double> z;
  std::string z_error;              // set when z is undefined
  std::size_t overlap = 0;          // records credited to both entities
};

struct ComparisonTable {
  std::string entity1, entity2;
  std::vector<ComparisonRow> rows;
};

struct ComparisonOptions {
  Percent k{1};
  CountingMethod counting = CountingMethod::WholeNumber;
  SubsetFilter base = SubsetFilter::default_doctypes();
  unsigned workers = 1;
};

/// One row per category, each with its own threshold from the category's
/// citation distribution, then an unfiltered "World" row. Throws Error
/// naming the first empty category.
ComparisonTable category_comparison(const Corpus& corpus, std::span<const std::string> categories,
                                    const std::pair<std::string, std::string>& entities,
                                    const BlocMap* blocs, const ComparisonOptions& options = {});

/// A named set of country codes used for collaboration labels.
struct Bloc {
  std::string label;
  std::set<std::string> countries;
};

std::vector<Bloc> blocs_from_map(const BlocMap& map, std::span<const std::string> bloc_codes);

struct CollaborationRow {
  std::string label;  // e.g. "CN", "CN+US", "none"
  std::size_t blocs = 0;
  std::int64_t n = 0;
  std::int64_t p_topk = 0;
  double expected = 0.0;
  std::optional<double> pp_topk;  // nullopt for empty classes
};

/// Label of the bloc subset a byline intersects ("none" if no bloc).
std::string collaboration_label(std::span<const Bloc> blocs, const std::set<std::string>& countries);

/// Partitions the view by intersected bloc subset (all non-empty subsets in
/// bloc order, then "none") and reports PP-top-k% per class. Throws Error if
/// blocs share a country.
std::vector<CollaborationRow> collaboration_classes(const CorpusView& view, std::span<const Bloc> blocs,
                                                    const TopClass& top);

struct TrendPoint {
  int year = 0;
  double n = 0.0;
  double p_topk = 0.0;
  double pp_topk = 0.0;
};

struct TrendOptions {
  Percent k{1};
  CountingMethod counting = CountingMethod::WholeNumber;
  SubsetFilter base = SubsetFilter::default_doctypes();
  unsigned workers = 1;
};

/// PP-top-k% of one entity per year, each against that year's own world
/// threshold. Throws Error if any corpus is missing or empty.
std::vector<TrendPoint> national_trend(const std::map<int, const Corpus*>& corpora, const std::string& entity,
                                       const BlocMap* blocs, const TrendOptions& options = {});

}  // namespace citerank
