#include "citerank/percentile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "citerank/parallel.hpp"

namespace citerank {

Percent::Percent(std::int64_t whole) : Percent(whole, 1) {}

Percent::Percent(std::int64_t numerator, std::int64_t denominator) : num_(numerator), den_(denominator) {
  if (den_ == 0) throw Error("percent with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const auto g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Percent Percent::parse(std::string_view text) {
  const auto bad = [&] { return Error("invalid percentage '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char ch : text) {
    if (ch == '.') {
      if (seen_dot) throw bad();
      seen_dot = true;
      continue;
    }
    if (ch < '0' || ch > '9') throw bad();
    seen_digit = true;
    if (num > (std::int64_t{1} << 50) || den > (std::int64_t{1} << 50)) throw bad();
    num = num * 10 + (ch - '0');
    if (seen_dot) den *= 10;
  }
  if (!seen_digit) throw bad();
  return Percent(num, den);
}

std::int64_t Percent::nominal_rank(std::int64_t n) const {
  const __int128 scaled = static_cast<__int128>(n) * num_;
  const __int128 div = static_cast<__int128>(den_) * 100;
  return static_cast<std::int64_t>((scaled + div - 1) / div);
}

double Percent::share_of(double n) const {
  return n * static_cast<double>(num_) / (100.0 * static_cast<double>(den_));
}

std::string Percent::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value());
  return std::string(buf, p);
}

void CitationHistogram::add(std::int64_t citations, std::uint64_t count) {
  if (count == 0) return;
  if (!bins_.empty() && bins_.back().first == citations) {
    bins_.back().second += count;
  } else {
    if (!bins_.empty() && bins_.back().first > citations) sorted_ = false;
    bins_.emplace_back(citations, count);
  }
  total_ += count;
}

void CitationHistogram::finalize() {
  if (sorted_) return;
  std::sort(bins_.begin(), bins_.end());
  std::vector<std::pair<std::int64_t, std::uint64_t>> merged;
  for (const auto& b : bins_) {
    if (!merged.empty() && merged.back().first == b.first) {
      merged.back().second += b.second;
    } else {
      merged.push_back(b);
    }
  }
  bins_ = std::move(merged);
  sorted_ = true;
}

void CitationHistogram::merge(const CitationHistogram& other) {
  finalize();
  std::vector<std::pair<std::int64_t, std::uint64_t>> out;
  out.reserve(bins_.size() + other.bins_.size());
  auto a = bins_.begin();
  auto b = other.bins_.begin();
  while (a != bins_.end() || b != other.bins_.end()) {
    if (b == other.bins_.end() || (a != bins_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == bins_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  bins_ = std::move(out);
  total_ += other.total_;
}

std::int64_t CitationHistogram::value_at_descending_rank(std::uint64_t rank) const {
  if (rank < 1 || rank > total_) throw Error("rank outside histogram");
  std::uint64_t seen = 0;
  for (auto it = bins_.rbegin(); it != bins_.rend(); ++it) {
    seen += it->second;
    if (seen >= rank) return it->first;
  }
  return bins_.front().first;
}

std::uint64_t CitationHistogram::count_at_least(std::int64_t value) const {
  std::uint64_t n = 0;
  for (auto it = bins_.rbegin(); it != bins_.rend() && it->first >= value; ++it) n += it->second;
  return n;
}

CitationHistogram citation_histogram(const CorpusView& view, unsigned workers) {
  const auto indices = view.indices();
  const auto& corpus = view.corpus();
  std::vector<CitationHistogram> parts(chunk_count(indices.size(), workers));
  for_each_chunk(indices.size(), workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> values;
    values.reserve(end - begin);
    for (std::size_t p = begin; p < end; ++p) values.push_back(corpus.citations(indices[p]));
    std::sort(values.begin(), values.end());
    auto& h = parts[chunk];
    for (auto v : values) h.add(v);
  });
  CitationHistogram total;
  for (const auto& part : parts) total.merge(part);
  return total;
}

Threshold top_class_threshold(const CorpusView& view, Percent k, unsigned workers) {
  if (view.empty()) throw Error("cannot compute a threshold on an empty subset");
  if (k.numerator() <= 0 || k.value() >= 100.0) {
    throw Error("k must lie in (0, 100), got " + k.to_string());
  }
  const auto hist = citation_histogram(view, workers);
  Threshold t;
  t.k = k;
  t.reference_n = static_cast<std::int64_t>(view.size());
  t.nominal_rank = k.nominal_rank(t.reference_n);
  t.citation_cutoff = hist.value_at_descending_rank(static_cast<std::uint64_t>(t.nominal_rank));
  t.actual_size = static_cast<std::int64_t>(hist.count_at_least(t.citation_cutoff));
  return t;
}

TopClass::TopClass(const CorpusView& view, const Threshold& threshold)
    : threshold_(threshold), flags_(view.corpus().size(), 0) {
  const auto& corpus = view.corpus();
  for (Corpus::Index i : view.indices()) {
    if (corpus.citations(i) >= threshold.citation_cutoff) {
      flags_[i] = 1;
      members_.push_back(i);
    }
  }
}

TopClass top_class(const CorpusView& view, const Threshold& threshold) { return TopClass(view, threshold); }

std::string_view to_string(PercentileScheme scheme) {
  switch (scheme) {
    case PercentileScheme::StrictBelow: return "strict-below";
    case PercentileScheme::MidFraction: return "mid";
    case PercentileScheme::FractionalTies: return "fractional-ties";
  }
  return "strict-below";
}

std::optional<PercentileScheme> parse_scheme(std::string_view text) {
  if (text == "strict-below") return PercentileScheme::StrictBelow;
  if (text == "mid") return PercentileScheme::MidFraction;
  if (text == "fractional-ties") return PercentileScheme::FractionalTies;
  return std::nullopt;
}

RankAssignment::RankAssignment(PercentileScheme scheme, std::vector<Corpus::Index> records,
                               std::vector<double> ranks)
    : scheme_(scheme), records_(std::move(records)), ranks_(std::move(ranks)) {
  if (records_.size() != ranks_.size()) throw Error("rank assignment size mismatch");
}

std::optional<double> RankAssignment::rank_of(Corpus::Index i) const {
  auto it = std::lower_bound(records_.begin(), records_.end(), i);
  if (it == records_.end() || *it != i) return std::nullopt;
  return ranks_[static_cast<std::size_t>(it - records_.begin())];
}

namespace {

// Ranks `records` (ascending corpus rows) against each other; writes ranks in
// the same order.
std::vector<double> rank_group(const Corpus& corpus, std::span<const Corpus::Index> records,
                               PercentileScheme scheme) {
  const std::size_t n = records.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus.citations(records[a]) < corpus.citations(records[b]);
  });
  std::vector<double> ranks(n);
  const double total = static_cast<double>(n);
  std::size_t g = 0;
  while (g < n) {
    std::size_t h = g;
    const auto value = corpus.citations(records[order[g]]);
    while (h < n && corpus.citations(records[order[h]]) == value) ++h;
    const double below = static_cast<double>(g);
    const double tie = static_cast<double>(h - g);
    double rank = 0.0;
    switch (scheme) {
      case PercentileScheme::StrictBelow: rank = 100.0 * below / total; break;
      case PercentileScheme::MidFraction: rank = 100.0 * (below + tie / 2.0) / total; break;
      case PercentileScheme::FractionalTies:
        // mean of 100 (j + 1) / (n + 1) over positions j = below .. below + tie - 1
        rank = 100.0 * (below + (tie + 1.0) / 2.0) / (total + 1.0);
        break;
    }
    for (std::size_t p = g; p < h; ++p) ranks[order[p]] = rank;
    g = h;
  }
  return ranks;
}

}  // namespace

RankAssignment percentile_ranks(const CorpusView& view, PercentileScheme scheme) {
  if (view.empty()) throw Error("cannot rank an empty subset");
  std::vector<Corpus::Index> records(view.indices().begin(), view.indices().end());
  auto ranks = rank_group(view.corpus(), records, scheme);
  return RankAssignment(scheme, std::move(records), std::move(ranks));
}

RankAssignment percentile_ranks_within(const CorpusView& view, PercentileScheme scheme,
                                       const std::function<std::string(Corpus::Index)>& group_of) {
  if (view.empty()) throw Error("cannot rank an empty subset");
  std::map<std::string, std::vector<Corpus::Index>> groups;
  for (Corpus::Index i : view.indices()) groups[group_of(i)].push_back(i);
  std::vector<Corpus::Index> records(view.indices().begin(), view.indices().end());
  std::vector<double> ranks(records.size());
  for (const auto& [key, members] : groups) {
    const auto group_ranks = rank_group(view.corpus(), members, scheme);
    for (std::size_t m = 0; m < members.size(); ++m) {
      const auto pos = std::lower_bound(records.begin(), records.end(), members[m]) - records.begin();
      ranks[static_cast<std::size_t>(pos)] = group_ranks[m];
    }
  }
  return RankAssignment(scheme, std::move(records), std::move(ranks));
}

std::vector<WindowThreshold> window_thresholds(const Corpus& corpus, std::span<const int> years, Percent k,
                                               const SubsetFilter& base) {
  if (!corpus.retrieval_date()) throw Error("window thresholds need the corpus retrieval date");
  const int retrieval_year = static_cast<int>(corpus.retrieval_date()->year());
  std::vector<WindowThreshold> out;
  for (int y : years) {
    const auto view = filter(corpus, base && SubsetFilter::years({y}));
    if (view.empty()) throw Error("no records for publication year " + std::to_string(y));
    out.push_back({y, retrieval_year - y, top_class_threshold(view, k)});
  }
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error("pearson: inputs differ in length");
  if (xs.size() < 3) throw Error("pearson: need at least three points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error("zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace citerank
