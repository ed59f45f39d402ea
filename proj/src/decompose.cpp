#include "citerank/decompose.hpp"

#include <algorithm>
#include <bit>

#include "citerank/indicators.hpp"
#include "citerank/stats.hpp"

namespace citerank {

namespace {

ComparisonRow comparison_row(const CorpusView& view, std::string label,
                             const std::pair<std::string, std::string>& entities, const BlocMap* blocs,
                             Percent k, CountingMethod method, unsigned workers) {
  ComparisonRow row;
  row.label = std::move(label);
  row.threshold = top_class_threshold(view, k, workers);
  const TopClass top(view, row.threshold);
  const EntityMatcher first(view.corpus(), entities.first, blocs);
  const EntityMatcher second(view.corpus(), entities.second, blocs);
  const auto c1 = count_entity(view, top, first, method, workers);
  const auto c2 = count_entity(view, top, second, method, workers);
  row.n_total = static_cast<double>(view.size());
  row.n1 = c1.n.value();
  row.n2 = c2.n.value();
  row.p1 = c1.p_topk.value();
  row.p2 = c2.p_topk.value();
  const double e1 = expected_topk(row.n1, k);
  const double e2 = expected_topk(row.n2, k);
  row.pp1 = e1 > 0 ? row.p1 / e1 : 0.0;
  row.pp2 = e2 > 0 ? row.p2 / e2 : 0.0;
  for (Corpus::Index i : view.indices()) {
    if (first.matches(i) && second.matches(i)) ++row.overlap;
  }
  try {
    row.z = z_two_proportions(row.p1, row.n1, row.p2, row.n2, entities.first, entities.second).z;
  } catch (const Error& e) {
    row.z_error = e.what();
  }
  return row;
}

}  // namespace

ComparisonTable category_comparison(const Corpus& corpus, std::span<const std::string> categories,
                                    const std::pair<std::string, std::string>& entities, const BlocMap* blocs,
                                    const ComparisonOptions& options) {
  ComparisonTable table;
  table.entity1 = entities.first;
  table.entity2 = entities.second;
  for (const auto& category : categories) {
    const auto view = filter(corpus, options.base && SubsetFilter::categories({category}));
    if (view.empty()) throw Error("category '" + category + "' has no records");
    table.rows.push_back(
        comparison_row(view, category, entities, blocs, options.k, options.counting, options.workers));
  }
  const auto world = filter(corpus, options.base);
  if (world.empty()) throw Error("no records pass the base filter");
  table.rows.push_back(comparison_row(world, "World", entities, blocs, options.k, options.counting, options.workers));
  return table;
}

std::vector<Bloc> blocs_from_map(const BlocMap& map, std::span<const std::string> bloc_codes) {
  std::vector<Bloc> out;
  for (const auto& code : bloc_codes) {
    Bloc b;
    b.label = code;
    b.countries = map.is_bloc(code) ? map.members(code) : std::set<std::string>{code};
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

void check_disjoint(std::span<const Bloc> blocs) {
  if (blocs.empty()) throw Error("no blocs configured");
  if (blocs.size() > 16) throw Error("at most 16 blocs are supported");
  for (std::size_t a = 0; a < blocs.size(); ++a) {
    for (std::size_t b = a + 1; b < blocs.size(); ++b) {
      for (const auto& c : blocs[a].countries) {
        if (blocs[b].countries.count(c) != 0) {
          throw Error("blocs '" + blocs[a].label + "' and '" + blocs[b].label + "' overlap on country '" + c + "'");
        }
      }
    }
  }
}

std::string mask_label(std::span<const Bloc> blocs, unsigned mask) {
  if (mask == 0) return "none";
  std::string label;
  for (std::size_t b = 0; b < blocs.size(); ++b) {
    if ((mask >> b) & 1u) {
      if (!label.empty()) label += '+';
      label += blocs[b].label;
    }
  }
  return label;
}

}  // namespace

std::string collaboration_label(std::span<const Bloc> blocs, const std::set<std::string>& countries) {
  unsigned mask = 0;
  for (std::size_t b = 0; b < blocs.size(); ++b) {
    for (const auto& c : countries) {
      if (blocs[b].countries.count(c) != 0) {
        mask |= 1u << b;
        break;
      }
    }
  }
  return mask_label(blocs, mask);
}

std::vector<CollaborationRow> collaboration_classes(const CorpusView& view, std::span<const Bloc> blocs,
                                                    const TopClass& top) {
  check_disjoint(blocs);
  const auto& corpus = view.corpus();
  std::vector<unsigned> code_mask(corpus.country_codes().size(), 0);
  for (std::size_t b = 0; b < blocs.size(); ++b) {
    for (const auto& c : blocs[b].countries) {
      if (auto id = corpus.country_codes().find(c)) code_mask[*id] |= 1u << b;
    }
  }
  const unsigned classes = 1u << blocs.size();
  std::vector<std::int64_t> n(classes, 0), p(classes, 0);
  for (Corpus::Index i : view.indices()) {
    unsigned mask = 0;
    for (CodeId c : corpus.countries(i)) mask |= code_mask[c];
    ++n[mask];
    if (top.contains(i)) ++p[mask];
  }

  std::vector<unsigned> order;
  for (unsigned m = 1; m < classes; ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  order.push_back(0);

  const Percent k = top.threshold().k;
  std::vector<CollaborationRow> rows;
  for (unsigned m : order) {
    CollaborationRow row;
    row.label = mask_label(blocs, m);
    row.blocs = static_cast<std::size_t>(std::popcount(m));
    row.n = n[m];
    row.p_topk = p[m];
    row.expected = expected_topk(static_cast<double>(row.n), k);
    if (row.n > 0) row.pp_topk = pp_topk(static_cast<double>(row.p_topk), row.expected);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TrendPoint> national_trend(const std::map<int, const Corpus*>& corpora, const std::string& entity,
                                       const BlocMap* blocs, const TrendOptions& options) {
  std::vector<TrendPoint> series;
  for (const auto& [year, corpus] : corpora) {
    if (corpus == nullptr) throw Error("missing corpus for year " + std::to_string(year));
    const auto view = filter(*corpus, options.base);
    if (view.empty()) throw Error("corpus for year " + std::to_string(year) + " is empty");
    const auto threshold = top_class_threshold(view, options.k, options.workers);
    const TopClass top(view, threshold);
    const EntityMatcher matcher(*corpus, entity, blocs);
    const auto counts = count_entity(view, top, matcher, options.counting, options.workers);
    TrendPoint point;
    point.year = year;
    point.n = counts.n.value();
    point.p_topk = counts.p_topk.value();
    const double expected = expected_topk(point.n, options.k);
    point.pp_topk = expected > 0 ? point.p_topk / expected : 0.0;
    series.push_back(point);
  }
  return series;
}

}  // namespace citerank
