#include "citerank/filter.hpp"

#include <algorithm>
#include <numeric>
#include <variant>

namespace citerank {

struct SubsetFilter::Node {
  enum class Kind { All, Years, Doctypes, Countries, Categories, HasCategory, And, Or, Not };
  Kind kind = Kind::All;
  std::set<int> years;
  std::set<DocType> doctypes;
  std::set<std::string> codes;
  std::shared_ptr<const Node> lhs, rhs;
};

struct SubsetFilter::Bound::Compiled {
  Node::Kind kind = Node::Kind::All;
  std::vector<int> years;            // sorted
  std::array<bool, 4> doctypes{};    // indexed by DocType
  std::vector<bool> codes;           // indexed by CodeId
  std::shared_ptr<const Compiled> lhs, rhs;
};

namespace {

using Node = SubsetFilter::Node;
using Kind = Node::Kind;

std::shared_ptr<const Node> leaf(Node node) { return std::make_shared<const Node>(std::move(node)); }

std::vector<bool> code_mask(const CodeTable& table, const std::set<std::string>& codes) {
  std::vector<bool> mask(table.size(), false);
  for (const auto& code : codes) {
    if (auto id = table.find(code)) mask[*id] = true;
  }
  return mask;
}

bool any_code(std::span<const CodeId> ids, const std::vector<bool>& mask) {
  return std::any_of(ids.begin(), ids.end(), [&](CodeId c) { return c < mask.size() && mask[c]; });
}

template <typename Set>
std::string join_set(const Set& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_same_v<typename Set::value_type, DocType>) {
      out += to_string(v);
    } else if constexpr (std::is_same_v<typename Set::value_type, int>) {
      out += std::to_string(v);
    } else {
      out += v;
    }
  }
  return out;
}

std::string describe_node(const Node& n) {
  switch (n.kind) {
    case Kind::All: return "all";
    case Kind::Years: return "year in {" + join_set(n.years) + "}";
    case Kind::Doctypes: return "doctype in {" + join_set(n.doctypes) + "}";
    case Kind::Countries: return "country in {" + join_set(n.codes) + "}";
    case Kind::Categories: return "category in {" + join_set(n.codes) + "}";
    case Kind::HasCategory: return "has category";
    case Kind::And: return "(" + describe_node(*n.lhs) + " AND " + describe_node(*n.rhs) + ")";
    case Kind::Or: return "(" + describe_node(*n.lhs) + " OR " + describe_node(*n.rhs) + ")";
    case Kind::Not: return "NOT " + describe_node(*n.lhs);
  }
  return "?";
}

}  // namespace

SubsetFilter::SubsetFilter() : root_(leaf(Node{})) {}

SubsetFilter SubsetFilter::years(std::set<int> years) {
  Node n;
  n.kind = Kind::Years;
  n.years = std::move(years);
  return SubsetFilter(leaf(std::move(n)));
}

SubsetFilter SubsetFilter::doctypes(std::set<DocType> types) {
  Node n;
  n.kind = Kind::Doctypes;
  n.doctypes = std::move(types);
  return SubsetFilter(leaf(std::move(n)));
}

SubsetFilter SubsetFilter::countries(std::set<std::string> codes) {
  Node n;
  n.kind = Kind::Countries;
  n.codes = std::move(codes);
  return SubsetFilter(leaf(std::move(n)));
}

SubsetFilter SubsetFilter::categories(std::set<std::string> codes) {
  Node n;
  n.kind = Kind::Categories;
  n.codes = std::move(codes);
  return SubsetFilter(leaf(std::move(n)));
}

SubsetFilter SubsetFilter::has_category() {
  Node n;
  n.kind = Kind::HasCategory;
  return SubsetFilter(leaf(std::move(n)));
}

SubsetFilter SubsetFilter::default_doctypes() {
  return doctypes({DocType::Article, DocType::Review, DocType::Letter});
}

SubsetFilter operator&&(const SubsetFilter& lhs, const SubsetFilter& rhs) {
  if (lhs.is_always_true()) return rhs;
  if (rhs.is_always_true()) return lhs;
  Node n;
  n.kind = Kind::And;
  n.lhs = lhs.root_;
  n.rhs = rhs.root_;
  return SubsetFilter(leaf(std::move(n)));
}

SubsetFilter operator||(const SubsetFilter& lhs, const SubsetFilter& rhs) {
  Node n;
  n.kind = Kind::Or;
  n.lhs = lhs.root_;
  n.rhs = rhs.root_;
  return SubsetFilter(leaf(std::move(n)));
}

SubsetFilter operator!(const SubsetFilter& f) {
  Node n;
  n.kind = Kind::Not;
  n.lhs = f.root_;
  return SubsetFilter(leaf(std::move(n)));
}

bool SubsetFilter::is_always_true() const { return root_->kind == Kind::All; }

std::string SubsetFilter::describe() const { return describe_node(*root_); }

namespace {

std::shared_ptr<const SubsetFilter::Bound::Compiled> compile(const Node& n, const Corpus& corpus) {
  auto c = std::make_shared<SubsetFilter::Bound::Compiled>();
  c->kind = n.kind;
  switch (n.kind) {
    case Kind::Years: c->years.assign(n.years.begin(), n.years.end()); break;
    case Kind::Doctypes:
      for (DocType t : n.doctypes) c->doctypes[static_cast<std::size_t>(t)] = true;
      break;
    case Kind::Countries: c->codes = code_mask(corpus.country_codes(), n.codes); break;
    case Kind::Categories: c->codes = code_mask(corpus.category_codes(), n.codes); break;
    case Kind::And:
    case Kind::Or:
      c->lhs = compile(*n.lhs, corpus);
      c->rhs = compile(*n.rhs, corpus);
      break;
    case Kind::Not: c->lhs = compile(*n.lhs, corpus); break;
    case Kind::All:
    case Kind::HasCategory: break;
  }
  return c;
}

bool evaluate(const SubsetFilter::Bound::Compiled& c, const Corpus& corpus, Corpus::Index i) {
  switch (c.kind) {
    case Kind::All: return true;
    case Kind::Years: return std::binary_search(c.years.begin(), c.years.end(), corpus.year(i));
    case Kind::Doctypes: return c.doctypes[static_cast<std::size_t>(corpus.doctype(i))];
    case Kind::Countries: return any_code(corpus.countries(i), c.codes);
    case Kind::Categories: return any_code(corpus.categories(i), c.codes);
    case Kind::HasCategory: return !corpus.categories(i).empty();
    case Kind::And: return evaluate(*c.lhs, corpus, i) && evaluate(*c.rhs, corpus, i);
    case Kind::Or: return evaluate(*c.lhs, corpus, i) || evaluate(*c.rhs, corpus, i);
    case Kind::Not: return !evaluate(*c.lhs, corpus, i);
  }
  return false;
}

}  // namespace

bool SubsetFilter::Bound::operator()(Corpus::Index i) const { return evaluate(*root_, *corpus_, i); }

SubsetFilter::Bound SubsetFilter::bind(const Corpus& corpus) const {
  Bound b;
  b.corpus_ = &corpus;
  b.root_ = compile(*root_, corpus);
  return b;
}

CorpusView::CorpusView(const Corpus& corpus) : corpus_(&corpus), indices_(corpus.size()) {
  std::iota(indices_.begin(), indices_.end(), Corpus::Index{0});
}

CorpusView::CorpusView(const Corpus& corpus, std::vector<Corpus::Index> indices)
    : corpus_(&corpus), indices_(std::move(indices)) {
  if (!std::is_sorted(indices_.begin(), indices_.end())) std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool CorpusView::contains(Corpus::Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

CorpusView filter(const Corpus& corpus, const SubsetFilter& f) {
  if (f.is_always_true()) return CorpusView(corpus);
  const auto pred = f.bind(corpus);
  std::vector<Corpus::Index> out;
  for (Corpus::Index i = 0; i < corpus.size(); ++i) {
    if (pred(i)) out.push_back(i);
  }
  return CorpusView(corpus, std::move(out));
}

CorpusView filter(const CorpusView& view, const SubsetFilter& f) {
  if (f.is_always_true()) return view;
  const auto pred = f.bind(view.corpus());
  std::vector<Corpus::Index> out;
  for (Corpus::Index i : view.indices()) {
    if (pred(i)) out.push_back(i);
  }
  return CorpusView(view.corpus(), std::move(out));
}

SummaryStats corpus_stats(const CorpusView& view) {
  if (view.empty()) throw Error("empty subset");
  const auto& corpus = view.corpus();
  std::vector<std::int64_t> values;
  values.reserve(view.size());
  for (Corpus::Index i : view.indices()) values.push_back(corpus.citations(i));
  std::sort(values.begin(), values.end());

  SummaryStats s;
  s.n = values.size();
  s.min = values.front();
  s.max = values.back();
  const std::size_t mid = s.n / 2;
  s.median = s.n % 2 == 1 ? static_cast<double>(values[mid])
                          : (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
  long double total = 0;
  for (auto v : values) {
    total += v;
    if (s.histogram.empty() || s.histogram.back().first != v) {
      s.histogram.emplace_back(v, 1);
    } else {
      ++s.histogram.back().second;
    }
  }
  s.mean = static_cast<double>(total / static_cast<long double>(s.n));
  return s;
}

}  // namespace citerank
