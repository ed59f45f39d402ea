#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citerank/corpus.hpp"

namespace citerank {

/// Predicate tree over record attributes. Leaves test set membership
/// (year, doctype) or non-empty intersection (countries, categories).
/// Filters are immutable values; copies share structure.
class SubsetFilter {
 public:
  struct Node;

  /// Always-true filter.
  SubsetFilter();

  static SubsetFilter years(std::set<int> years);
  static SubsetFilter doctypes(std::set<DocType> types);
  static SubsetFilter countries(std::set<std::string> codes);
  static SubsetFilter categories(std::set<std::string> codes);
  /// Records that list at least one category.
  static SubsetFilter has_category();

  /// Article, Review and Letter; Other is loadable but excluded by default.
  static SubsetFilter default_doctypes();

  friend SubsetFilter operator&&(const SubsetFilter& lhs, const SubsetFilter& rhs);
  friend SubsetFilter operator||(const SubsetFilter& lhs, const SubsetFilter& rhs);
  friend SubsetFilter operator!(const SubsetFilter& f);

  bool is_always_true() const;
  std::string describe() const;

  /// Filter with code names resolved against one corpus.
  class Bound {
   public:
    bool operator()(Corpus::Index i) const;
    struct Compiled;

   private:
    friend class SubsetFilter;
    const Corpus* corpus_ = nullptr;
    std::shared_ptr<const Compiled> root_;
  };

  Bound bind(const Corpus& corpus) const;

 private:
  explicit SubsetFilter(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

/// Reference to a corpus plus the ascending row indices selected by a
/// filter. The corpus must outlive the view.
class CorpusView {
 public:
  explicit CorpusView(const Corpus& corpus);
  CorpusView(const Corpus& corpus, std::vector<Corpus::Index> indices);

  const Corpus& corpus() const { return *corpus_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::span<const Corpus::Index> indices() const { return indices_; }
  bool contains(Corpus::Index i) const;

 private:
  const Corpus* corpus_;
  std::vector<Corpus::Index> indices_;
};

CorpusView filter(const Corpus& corpus, const SubsetFilter& f);
CorpusView filter(const CorpusView& view, const SubsetFilter& f);

struct SummaryStats {
  std::size_t n = 0;
  std::int64_t min = 0;
  std::int64_t max = 0;
  double median = 0.0;
  double mean = 0.0;
  /// (citation count, number of records), ascending by count.
  std::vector<std::pair<std::int64_t, std::uint64_t>> histogram;
};

/// Throws Error("empty subset") for an empty view.
SummaryStats corpus_stats(const CorpusView& view);

}  // namespace citerank
