#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/filter.hpp"

namespace citerank {

/// Exact percentage k in (0, 100), held as a reduced fraction so that
/// ceil(n * k / 100) is computed without floating error.
class Percent {
 public:
  Percent(std::int64_t whole = 1);
  Percent(std::int64_t numerator, std::int64_t denominator);

  /// Parses decimal text such as "1", "0.5" or "12.25".
  static Percent parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// k / 100 as a probability.
  double fraction() const { return value() / 100.0; }

  /// ceil(n * k / 100).
  std::int64_t nominal_rank(std::int64_t n) const;
  /// n * k / 100, unrounded.
  double share_of(double n) const;

  std::string to_string() const;

  friend bool operator==(const Percent&, const Percent&) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Top-k% membership rule for one reference set. Members are all records
/// with citations >= citation_cutoff, so ties at the cutoff inflate
/// actual_size above nominal_rank.
struct Threshold {
  Percent k;
  std::int64_t reference_n = 0;
  std::int64_t nominal_rank = 0;
  std::int64_t citation_cutoff = 0;
  std::int64_t actual_size = 0;
};

/// Exact, mergeable citation histogram (value -> count), ascending.
class CitationHistogram {
 public:
  void add(std::int64_t citations, std::uint64_t count = 1);
  void merge(const CitationHistogram& other);
  void finalize();

  std::uint64_t total() const { return total_; }
  const std::vector<std::pair<std::int64_t, std::uint64_t>>& bins() const { return bins_; }

  /// Citation count of the record at 1-based `rank` in descending order.
  std::int64_t value_at_descending_rank(std::uint64_t rank) const;
  std::uint64_t count_at_least(std::int64_t value) const;

 private:
  std::vector<std::pair<std::int64_t, std::uint64_t>> bins_;
  std::uint64_t total_ = 0;
  bool sorted_ = true;
};

CitationHistogram citation_histogram(const CorpusView& view, unsigned workers = 1);

/// Throws Error for an empty view or k outside (0, 100). Depends only on
/// the multiset of citation counts; workers only split the histogram build.
Threshold top_class_threshold(const CorpusView& view, Percent k, unsigned workers = 1);

/// Records of a view at or above a threshold's cutoff.
class TopClass {
 public:
  TopClass(const CorpusView& view, const Threshold& threshold);

  const Threshold& threshold() const { return threshold_; }
  bool contains(Corpus::Index i) const { return i < flags_.size() && flags_[i] != 0; }
  std::span<const Corpus::Index> members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  Threshold threshold_;
  std::vector<std::uint8_t> flags_;  // indexed by corpus row
  std::vector<Corpus::Index> members_;
};

TopClass top_class(const CorpusView& view, const Threshold& threshold);

enum class PercentileScheme {
  /// 100 * (records strictly below) / N; ties share the group minimum.
  StrictBelow,
  /// 100 * (below + tie_size / 2) / N.
  MidFraction,
  /// Positional percentile 100 * (j + 1) / (N + 1) for ascending position j,
  /// averaged over each tie group.
  FractionalTies,
};

std::string_view to_string(PercentileScheme scheme);
std::optional<PercentileScheme> parse_scheme(std::string_view text);

/// Percentile rank per record of a reference view, stored in view order.
class RankAssignment {
 public:
  RankAssignment(PercentileScheme scheme, std::vector<Corpus::Index> records,
                 std::vector<double> ranks);

  PercentileScheme scheme() const { return scheme_; }
  std::size_t size() const { return records_.size(); }
  std::span<const Corpus::Index> records() const { return records_; }
  std::span<const double> ranks() const { return ranks_; }

  /// Rank of a corpus row, or nullopt if it is not in the reference view.
  std::optional<double> rank_of(Corpus::Index i) const;

 private:
  PercentileScheme scheme_;
  std::vector<Corpus::Index> records_;  // ascending
  std::vector<double> ranks_;
};

/// Throws Error for an empty view.
RankAssignment percentile_ranks(const CorpusView& view,
                                PercentileScheme scheme = PercentileScheme::StrictBelow);

/// Ranks every record against the records sharing its group key.
RankAssignment percentile_ranks_within(
    const CorpusView& view, PercentileScheme scheme,
    const std::function<std::string(Corpus::Index)>& group_of);

struct WindowThreshold {
  int year = 0;
  int window_length = 0;
  Threshold threshold;
};

/// Per-publication-year thresholds; window length is the retrieval year
/// minus the publication year. Needs the corpus retrieval date.
std::vector<WindowThreshold> window_thresholds(const Corpus& corpus, std::span<const int> years,
                                               Percent k, const SubsetFilter& base = {});

/// Product-moment correlation. Throws on unequal lengths, fewer than three
/// points, or zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace citerank
