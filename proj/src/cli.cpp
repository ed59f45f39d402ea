#include "citerank/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "citerank/decompose.hpp"
#include "citerank/filter.hpp"
#include "citerank/indicators.hpp"
#include "citerank/stats.hpp"
#include "citerank/synth.hpp"

namespace citerank::cli {

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Ingest: return "ingest";
    case Command::Threshold: return "threshold";
    case Command::Indicators: return "indicators";
    case Command::Compare: return "compare";
    case Command::Trend: return "trend";
    case Command::Collab: return "collab";
    case Command::Refine: return "refine";
    case Command::Simulate: return "simulate";
  }
  return "?";
}

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::size_t pos = 0;
    while (pos <= item.size()) {
      const auto comma = item.find(',', pos);
      auto token = item.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      token.erase(0, token.find_first_not_of(" \t"));
      token.erase(token.find_last_not_of(" \t") + 1);
      if (!token.empty()) out.push_back(token);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return out;
}

int parse_year(const std::string& text, const std::string& context) {
  int year = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), year);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw UsageError(context + ": '" + text + "' is not a year");
  }
  return year;
}

// Raw option storage shared by all subcommands.
struct RawOptions {
  std::vector<std::string> inputs;
  std::string k = "1";
  std::string counting = "whole";
  std::string scheme = "strict-below";
  std::vector<std::string> doctypes;
  std::vector<std::string> entities;
  std::vector<std::string> categories;
  std::vector<std::string> years;
  std::string blocs;
  std::string format = "csv";
  std::string output;
  std::string spec;
  std::string corpus_out;
  std::string normalized_out;
  std::string retrieval_date;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct Flags {
  bool input = false, input_required = true, input_repeatable = false;
  bool k = false, counting = false, scheme = false, doctypes = false, entities = false;
  bool entities_required = false, categories = false, categories_required = false, years = false;
  bool blocs = false, spec = false, seed = false, corpus_out = false, normalized_out = false;
  bool retrieval_date = false, workers = true;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description, RawOptions& raw,
                      const Flags& flags) {
  auto* sub = app.add_subcommand(name, description);
  if (flags.input) {
    auto* opt = sub->add_option("--input", raw.inputs,
                                flags.input_repeatable ? "Corpus file per year, as YEAR=PATH (repeatable)"
                                                       : "Corpus file (delimited or .jsonl)");
    if (flags.input_required) opt->required();
    if (!flags.input_repeatable) opt->expected(1);
  }
  if (flags.k) sub->add_option("--k", raw.k, "Top class size in percent")->capture_default_str();
  if (flags.counting) {
    sub->add_option("--counting", raw.counting, "Country counting")
        ->check(CLI::IsMember({"whole", "fractional"}))
        ->capture_default_str();
  }
  if (flags.scheme) {
    sub->add_option("--scheme", raw.scheme, "Percentile rank scheme")
        ->check(CLI::IsMember({"strict-below", "mid", "fractional-ties"}))
        ->capture_default_str();
  }
  if (flags.doctypes) {
    sub->add_option("--doctypes", raw.doctypes, "Document types (default Article,Review,Letter)")->delimiter(',');
  }
  if (flags.entities) {
    auto* opt = sub->add_option("--entities", raw.entities, "Country or bloc codes")->delimiter(',');
    if (flags.entities_required) opt->required();
  }
  if (flags.categories) {
    auto* opt = sub->add_option("--categories", raw.categories, "Subject category codes")->delimiter(',');
    if (flags.categories_required) opt->required();
  }
  if (flags.years) sub->add_option("--years", raw.years, "Publication years")->delimiter(',');
  if (flags.blocs) sub->add_option("--blocs", raw.blocs, "Bloc mapping file (country_code,bloc_code)");
  if (flags.spec) sub->add_option("--spec", raw.spec, "Synthetic corpus specification")->required();
  if (flags.seed) sub->add_option("--seed", raw.seed, "Override the specification seed");
  if (flags.corpus_out) sub->add_option("--corpus", raw.corpus_out, "Write the generated corpus here");
  if (flags.normalized_out) sub->add_option("--normalized", raw.normalized_out, "Write the normalized corpus here");
  if (flags.retrieval_date) {
    sub->add_option("--retrieval-date", raw.retrieval_date, "Retrieval date YYYY-MM-DD (overrides file metadata)");
  }
  if (flags.workers) {
    sub->add_option("--workers", raw.workers, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  }
  sub->add_option("--format", raw.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", raw.output, "Output file (default: standard output)");
  return sub;
}

}  // namespace

CommandPlan parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Percentile-rank citation indicators", argv.empty() ? "citerank" : argv.front()};
  app.require_subcommand(1, 1);
  RawOptions raw;

  Flags base;
  base.input = true;
  base.doctypes = true;

  Flags ingest = base;
  ingest.normalized_out = true;
  ingest.doctypes = false;
  ingest.workers = false;

  Flags threshold = base;
  threshold.k = true;
  threshold.years = true;
  threshold.categories = true;
  threshold.retrieval_date = true;

  Flags indicators = base;
  indicators.k = indicators.counting = indicators.scheme = indicators.entities = indicators.blocs = true;
  indicators.categories = true;

  Flags compare = base;
  compare.k = compare.counting = compare.blocs = true;
  compare.entities = compare.entities_required = true;
  compare.categories = compare.categories_required = true;

  Flags trend = base;
  trend.input_repeatable = true;
  trend.k = trend.counting = trend.blocs = true;
  trend.entities = trend.entities_required = true;

  Flags collab = base;
  collab.k = collab.blocs = true;
  collab.entities = collab.entities_required = true;

  Flags refine = base;
  refine.k = refine.counting = refine.scheme = refine.blocs = true;
  refine.entities = true;

  Flags simulate;
  simulate.spec = simulate.seed = simulate.corpus_out = simulate.k = true;

  const std::vector<std::pair<Command, CLI::App*>> commands{
      {Command::Ingest, add_command(app, "ingest", "Validate and normalize a corpus file", raw, ingest)},
      {Command::Threshold, add_command(app, "threshold", "Top-k% citation thresholds", raw, threshold)},
      {Command::Indicators, add_command(app, "indicators", "P-top-k%, PP-top-k%, I3 and %I3 per entity", raw, indicators)},
      {Command::Compare, add_command(app, "compare", "Per-category comparison of two entities", raw, compare)},
      {Command::Trend, add_command(app, "trend", "PP-top-k% per year", raw, trend)},
      {Command::Collab, add_command(app, "collab", "PP-top-k% per collaboration class", raw, collab)},
      {Command::Refine, add_command(app, "refine", "Category-refined PP-top-k% and MNCS", raw, refine)},
      {Command::Simulate, add_command(app, "simulate", "Synthetic corpus and normalization divergence", raw, simulate)},
  };

  CommandPlan plan;
  std::vector<std::string> args(argv.begin(), argv.end());
  if (args.empty()) args.emplace_back("citerank");
  std::vector<char*> c_argv;
  for (auto& a : args) c_argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(c_argv.size()), c_argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      plan.help = true;
      const CLI::App* target = &app;
      for (const auto& [cmd, sub] : commands) {
        if (sub->parsed()) target = sub;
      }
      plan.help_text = target->help();
      return plan;
    }
    throw UsageError(e.what());
  }

  for (const auto& [cmd, sub] : commands) {
    if (sub->parsed()) plan.command = cmd;
  }

  try {
    plan.k = Percent::parse(raw.k);
  } catch (const Error&) {
    throw UsageError("--k: '" + raw.k + "' is not a percentage");
  }
  if (plan.k.numerator() <= 0 || plan.k.value() >= 100.0) throw UsageError("--k must lie in (0, 100)");
  plan.counting = raw.counting == "fractional" ? CountingMethod::FractionalByCountry : CountingMethod::WholeNumber;
  plan.scheme = *parse_scheme(raw.scheme);
  if (!raw.doctypes.empty()) {
    plan.doctypes.clear();
    for (const auto& d : split_list(raw.doctypes)) {
      auto type = parse_doctype(d);
      if (!type) throw UsageError("--doctypes: unknown document type '" + d + "'");
      plan.doctypes.push_back(*type);
    }
  }
  plan.entities = split_list(raw.entities);
  plan.categories = split_list(raw.categories);
  for (const auto& y : split_list(raw.years)) plan.years.push_back(parse_year(y, "--years"));
  if (!raw.blocs.empty()) plan.blocs_path = raw.blocs;
  plan.format = raw.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (!raw.output.empty()) plan.output_path = raw.output;
  if (!raw.spec.empty()) plan.spec_path = raw.spec;
  if (!raw.corpus_out.empty()) plan.corpus_out = raw.corpus_out;
  if (!raw.normalized_out.empty()) plan.normalized_out = raw.normalized_out;
  if (!raw.retrieval_date.empty()) {
    plan.retrieval_date = parse_date(raw.retrieval_date);
    if (!plan.retrieval_date) throw UsageError("--retrieval-date: expected YYYY-MM-DD");
  }
  if (plan.command == Command::Simulate && commands.back().second->count("--seed") > 0) plan.seed = raw.seed;
  plan.workers = raw.workers;

  if (plan.command == Command::Trend) {
    for (const auto& item : raw.inputs) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--input for trend must be YEAR=PATH, got '" + item + "'");
      const int year = parse_year(item.substr(0, eq), "--input");
      if (!plan.year_inputs.emplace(year, item.substr(eq + 1)).second) {
        throw UsageError("--input: year " + std::to_string(year) + " given twice");
      }
    }
  } else {
    plan.inputs = raw.inputs;
  }

  if (plan.command == Command::Compare && plan.entities.size() != 2) {
    throw UsageError("compare needs exactly two --entities");
  }
  if (plan.command == Command::Collab && plan.entities.size() < 2) {
    throw UsageError("collab needs at least two --entities (blocs)");
  }
  return plan;
}

namespace {

SubsetFilter doctype_filter(const CommandPlan& plan) {
  return SubsetFilter::doctypes(std::set<DocType>(plan.doctypes.begin(), plan.doctypes.end()));
}

Corpus load_input(const CommandPlan& plan, const std::string& path) {
  auto corpus = load_corpus(path);
  if (plan.retrieval_date) {
    // Rebuild with the override; records are unchanged.
    CorpusBuilder builder;
    builder.reserve(corpus.size());
    builder.set_retrieval_date(plan.retrieval_date);
    builder.set_label(corpus.label());
    for (Corpus::Index i = 0; i < corpus.size(); ++i) builder.add(corpus.record(i));
    corpus = std::move(builder).build();
  }
  return corpus;
}

std::unique_ptr<BlocMap> load_blocs(const CommandPlan& plan) {
  if (!plan.blocs_path) return nullptr;
  return std::make_unique<BlocMap>(BlocMap::load(*plan.blocs_path));
}

Cell count_cell(double value, CountingMethod method) {
  if (method == CountingMethod::WholeNumber) return static_cast<std::int64_t>(std::llround(value));
  return Decimal{value, 2};
}

std::string threshold_note(const Threshold& t, const std::string& scope) {
  std::string note = scope + ": top-" + t.k.to_string() + "% cutoff " + std::to_string(t.citation_cutoff) +
                     " citations at rank " + std::to_string(t.nominal_rank) + " of " + std::to_string(t.reference_n) +
                     "; class size " + std::to_string(t.actual_size);
  if (t.actual_size > t.nominal_rank) {
    note += " (ties at the cutoff add " + std::to_string(t.actual_size - t.nominal_rank) + ")";
  }
  return note;
}

std::vector<OutputTable> ingest_tables(const CommandPlan& plan) {
  const auto corpus = load_input(plan, plan.inputs.front());
  const auto report = validate_corpus(corpus);
  OutputTable t;
  t.name = "validation";
  t.columns = {"metric", "value"};
  t.add_row({std::string("records"), static_cast<std::int64_t>(report.records)});
  t.add_row({std::string("empty_countries"), static_cast<std::int64_t>(report.empty_countries)});
  t.add_row({std::string("empty_categories"), static_cast<std::int64_t>(report.empty_categories)});
  t.add_row({std::string("doctype_other"), static_cast<std::int64_t>(report.other_doctype)});
  t.footnotes = report.notes;
  if (plan.normalized_out) {
    save_corpus(corpus, *plan.normalized_out);
    t.footnotes.push_back("normalized corpus written to " + *plan.normalized_out);
  }
  return {t};
}

std::vector<OutputTable> threshold_tables(const CommandPlan& plan) {
  const auto corpus = load_input(plan, plan.inputs.front());
  auto base = doctype_filter(plan);
  if (!plan.categories.empty()) {
    base = base && SubsetFilter::categories(std::set<std::string>(plan.categories.begin(), plan.categories.end()));
  }
  OutputTable t;
  t.name = "thresholds";
  t.columns = {"scope", "window_years", "n", "k", "nominal_rank", "citation_cutoff", "actual_size"};
  auto add = [&](const std::string& scope, Cell window, const Threshold& th) {
    t.add_row({scope, window, th.reference_n, th.k.to_string(), th.nominal_rank, th.citation_cutoff, th.actual_size});
    if (th.actual_size > th.nominal_rank) t.footnotes.push_back(threshold_note(th, scope));
  };
  if (plan.years.empty()) {
    const auto view = filter(corpus, base);
    add("all", std::monostate{}, top_class_threshold(view, plan.k, plan.workers));
    return {t};
  }
  const auto series = window_thresholds(corpus, plan.years, plan.k, base);
  std::vector<double> windows, cutoffs;
  for (const auto& w : series) {
    add(std::to_string(w.year), static_cast<std::int64_t>(w.window_length), w.threshold);
    windows.push_back(w.window_length);
    cutoffs.push_back(static_cast<double>(w.threshold.citation_cutoff));
  }
  if (series.size() >= 3) {
    try {
      t.footnotes.push_back("pearson(window_years, citation_cutoff) = " + format_fixed(pearson(windows, cutoffs), 4));
    } catch (const Error& e) {
      t.footnotes.push_back(std::string("pearson undefined: ") + e.what());
    }
  }
  return {t};
}

std::vector<OutputTable> indicator_tables(const CommandPlan& plan) {
  const auto corpus = load_input(plan, plan.inputs.front());
  const auto blocs = load_blocs(plan);
  auto base = doctype_filter(plan);
  if (!plan.categories.empty()) {
    base = base && SubsetFilter::categories(std::set<std::string>(plan.categories.begin(), plan.categories.end()));
  }
  const auto reference = filter(corpus, base);
  IndicatorOptions options;
  options.k = plan.k;
  options.counting = plan.counting;
  options.scheme = plan.scheme;
  options.workers = plan.workers;
  const auto result = compute_indicators(reference, plan.entities, blocs.get(), options);

  OutputTable t;
  t.name = "indicators";
  t.columns = {"entity", "n", "p_topk", "expected", "pp_topk", "i3", "pct_i3"};
  for (const auto& row : result.rows) {
    const bool world = &row == &result.rows.back();
    const auto method = world ? CountingMethod::WholeNumber : plan.counting;
    t.add_row({row.label, count_cell(row.n, method), count_cell(row.p_topk, method), Decimal{row.expected, 2},
               Decimal{row.pp_topk, 2}, row.i3 ? count_cell(*row.i3, method) : Cell{},
               row.pct_i3 ? Cell{Decimal{*row.pct_i3, 2}} : Cell{}});
  }
  t.footnotes.push_back(threshold_note(result.threshold, "reference set"));
  t.footnotes.push_back("counting: " + std::string(to_string(plan.counting)) +
                        "; percentile scheme: " + std::string(to_string(plan.scheme)));
  return {t};
}

std::vector<OutputTable> compare_tables(const CommandPlan& plan) {
  const auto corpus = load_input(plan, plan.inputs.front());
  const auto blocs = load_blocs(plan);
  ComparisonOptions options;
  options.k = plan.k;
  options.counting = plan.counting;
  options.base = doctype_filter(plan);
  options.workers = plan.workers;
  const auto& e1 = plan.entities[0];
  const auto& e2 = plan.entities[1];
  const auto table = category_comparison(corpus, plan.categories, {e1, e2}, blocs.get(), options);

  OutputTable t;
  t.name = "comparison";
  t.columns = {"category", "n_total", "citation_cutoff", "n_" + e1, "n_" + e2, "p_" + e1, "p_" + e2,
               "pp_" + e1, "pp_" + e2, "z", "significant_05"};
  for (const auto& row : table.rows) {
    Cell z;
    Cell sig = std::string{};
    if (row.z) {
      z = Decimal{*row.z, 3};
      sig = std::string(std::fabs(*row.z) > kCriticalZ05 ? "*" : "");
    } else {
      t.footnotes.push_back(row.label + ": z undefined (" + row.z_error + ")");
    }
    t.add_row({row.label, static_cast<std::int64_t>(row.n_total), row.threshold.citation_cutoff,
               count_cell(row.n1, plan.counting), count_cell(row.n2, plan.counting),
               count_cell(row.p1, plan.counting), count_cell(row.p2, plan.counting), Decimal{row.pp1, 2},
               Decimal{row.pp2, 2}, z, sig});
    if (row.overlap > 0) {
      t.footnotes.push_back(row.label + ": " + std::to_string(row.overlap) + " records credited to both " + e1 +
                            " and " + e2 + "; z is not corrected for overlap");
    }
    if (row.threshold.actual_size > row.threshold.nominal_rank) {
      t.footnotes.push_back(threshold_note(row.threshold, row.label));
    }
  }
  t.footnotes.push_back("* |z| > 1.96 (two-sided 5% level)");
  return {t};
}

std::vector<OutputTable> trend_tables(const CommandPlan& plan) {
  const auto blocs = load_blocs(plan);
  std::map<int, Corpus> corpora;
  for (const auto& [year, path] : plan.year_inputs) corpora.emplace(year, load_input(plan, path));
  std::map<int, const Corpus*> refs;
  for (const auto& [year, corpus] : corpora) refs.emplace(year, &corpus);
  TrendOptions options;
  options.k = plan.k;
  options.counting = plan.counting;
  options.base = doctype_filter(plan);
  options.workers = plan.workers;

  OutputTable t;
  t.name = "trend";
  t.columns = {"entity", "year", "n", "p_topk", "pp_topk"};
  for (const auto& entity : plan.entities) {
    for (const auto& point : national_trend(refs, entity, blocs.get(), options)) {
      t.add_row({entity, static_cast<std::int64_t>(point.year), count_cell(point.n, plan.counting),
                 count_cell(point.p_topk, plan.counting), Decimal{point.pp_topk, 2}});
    }
  }
  return {t};
}

std::vector<OutputTable> collab_tables(const CommandPlan& plan) {
  const auto corpus = load_input(plan, plan.inputs.front());
  const auto blocs = load_blocs(plan);
  const auto view = filter(corpus, doctype_filter(plan));
  const auto threshold = top_class_threshold(view, plan.k, plan.workers);
  const TopClass top(view, threshold);
  const auto bloc_sets = blocs ? blocs_from_map(*blocs, plan.entities) : blocs_from_map(BlocMap{}, plan.entities);
  const auto rows = collaboration_classes(view, bloc_sets, top);

  OutputTable t;
  t.name = "collaboration";
  t.columns = {"class", "blocs", "n", "p_topk", "expected", "pp_topk"};
  for (const auto& row : rows) {
    t.add_row({row.label, static_cast<std::int64_t>(row.blocs), row.n, row.p_topk, Decimal{row.expected, 2},
               row.pp_topk ? Cell{Decimal{*row.pp_topk, 2}} : Cell{}});
  }
  t.footnotes.push_back(threshold_note(threshold, "reference set"));
  return {t};
}

std::vector<OutputTable> refine_tables(const CommandPlan& plan) {
  const auto corpus = load_input(plan, plan.inputs.front());
  const auto blocs = load_blocs(plan);
  const auto base = filter(corpus, doctype_filter(plan));
  const auto view = filter(base, SubsetFilter::has_category());
  if (view.empty()) throw Error("no records with categories to refine");

  const auto threshold = top_class_threshold(view, plan.k, plan.workers);
  const TopClass top(view, threshold);
  const auto refined = refine_by_category(view, first_category_of(corpus), plan.scheme);
  const auto scores = rc_scores(view, Stratification::CategoryYear);

  OutputTable t;
  t.name = "refined";
  t.columns = {"entity", "n", "p_raw", "pp_raw", "p_refined", "pp_refined", "mncs"};
  auto entity_mncs = [&](const EntityMatcher* entity) -> Cell {
    long double weighted = 0, weight = 0;
    for (const auto& s : scores) {
      double w = 1.0;
      if (entity != nullptr) {
        const auto hits = entity->hits(s.record);
        if (hits == 0) continue;
        w = plan.counting == CountingMethod::WholeNumber
                ? 1.0
                : static_cast<double>(hits) / static_cast<double>(corpus.countries(s.record).size());
      }
      weighted += w * s.rc;
      weight += w;
    }
    if (weight == 0) return Cell{};
    return Decimal{static_cast<double>(weighted / weight), 2};
  };
  for (const auto& code : plan.entities) {
    const EntityMatcher entity(corpus, code, blocs.get());
    const auto raw = count_entity(view, top, entity, plan.counting, plan.workers);
    const auto ref = refined_pp_topk(view, refined, entity, plan.k, plan.counting);
    const double expected = expected_topk(raw.n.value(), plan.k);
    t.add_row({code, count_cell(raw.n.value(), plan.counting), count_cell(raw.p_topk.value(), plan.counting),
               Decimal{expected > 0 ? raw.p_topk.value() / expected : 0.0, 2},
               count_cell(ref.p_topk, plan.counting), Decimal{ref.pp_topk, 2}, entity_mncs(&entity)});
  }
  const auto refined_top = select_top_by_score(refined.ranks.records(), refined.scores, plan.k);
  const double world_expected = expected_topk(static_cast<double>(view.size()), plan.k);
  t.add_row({std::string("World"), static_cast<std::int64_t>(view.size()), threshold.actual_size,
             Decimal{static_cast<double>(threshold.actual_size) / world_expected, 2},
             static_cast<std::int64_t>(refined_top.members.size()),
             Decimal{static_cast<double>(refined_top.members.size()) / world_expected, 2}, entity_mncs(nullptr)});
  t.footnotes.push_back(threshold_note(threshold, "raw top class"));
  t.footnotes.push_back("refined: percentile rank within the first listed category divided by that category's mean rank");
  t.footnotes.push_back("mncs: citations over the category-year mean");
  if (base.size() > view.size()) {
    t.footnotes.push_back(std::to_string(base.size() - view.size()) + " record(s) without categories excluded");
  }
  return {t};
}

std::vector<OutputTable> simulate_tables(const CommandPlan& plan) {
  auto spec = synth::load_spec(*plan.spec_path);
  if (plan.seed) spec.seed = *plan.seed;
  const auto corpus = synth::generate(spec, plan.workers);
  if (plan.corpus_out) save_corpus(corpus, *plan.corpus_out);
  const auto report = synth::divergence_report(corpus, spec, plan.k, plan.workers);

  OutputTable fields;
  fields.name = "fields";
  fields.columns = {"category", "n", "raw_share", "refined_share", "gap"};
  for (const auto& f : report.fields) {
    fields.add_row({f.category, f.n, Decimal{f.raw_share, 4}, Decimal{f.refined_share, 4}, Decimal{f.gap, 4}});
  }
  fields.footnotes.push_back("raw top class " + std::to_string(report.raw_top_size) + " records; refined " +
                             std::to_string(report.refined_top_size));
  fields.footnotes.push_back("seed " + std::to_string(spec.seed) + "; " + std::to_string(corpus.size()) + " records" +
                             (plan.corpus_out ? "; corpus written to " + *plan.corpus_out : std::string{}));

  OutputTable countries;
  countries.name = "countries";
  countries.columns = {"country", "n", "raw_share", "refined_share", "pp_raw", "pp_refined"};
  for (const auto& c : report.countries) {
    countries.add_row({c.code, static_cast<std::int64_t>(std::llround(c.n)), Decimal{c.raw_share, 4},
                       Decimal{c.refined_share, 4}, Decimal{c.pp_raw, 2}, Decimal{c.pp_refined, 2}});
  }
  return {fields, countries};
}

}  // namespace

std::vector<OutputTable> build_tables(const CommandPlan& plan) {
  switch (plan.command) {
    case Command::Ingest: return ingest_tables(plan);
    case Command::Threshold: return threshold_tables(plan);
    case Command::Indicators: return indicator_tables(plan);
    case Command::Compare: return compare_tables(plan);
    case Command::Trend: return trend_tables(plan);
    case Command::Collab: return collab_tables(plan);
    case Command::Refine: return refine_tables(plan);
    case Command::Simulate: return simulate_tables(plan);
  }
  return {};
}

int execute(const CommandPlan& plan, std::ostream& out, std::ostream& err) {
  if (plan.help) {
    out << plan.help_text;
    return 0;
  }
  try {
    const auto tables = build_tables(plan);
    if (plan.output_path) {
      std::ofstream file(*plan.output_path, std::ios::binary);
      if (!file) throw Error("cannot write '" + *plan.output_path + "'");
      write_tables(tables, plan.format, file);
      if (!file) throw Error("write failed for '" + *plan.output_path + "'");
    } else {
      write_tables(tables, plan.format, out);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CommandPlan plan;
  try {
    plan = parse_args(argv);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }
  return execute(plan, out, err);
}

}  // namespace citerank::cli
