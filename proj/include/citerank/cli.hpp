#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/entity.hpp"
#include "citerank/output_table.hpp"
#include "citerank/percentile.hpp"

namespace citerank::cli {

/// Invalid command line (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Ingest, Threshold, Indicators, Compare, Trend, Collab, Refine, Simulate };

std::string_view to_string(Command command);

struct CommandPlan {
  Command command = Command::Indicators;
  std::vector<std::string> inputs;          // plain paths
  std::map<int, std::string> year_inputs;   // trend: year=PATH
  Percent k{1};
  CountingMethod counting = CountingMethod::WholeNumber;
  PercentileScheme scheme = PercentileScheme::StrictBelow;
  std::vector<DocType> doctypes{DocType::Article, DocType::Review, DocType::Letter};
  std::vector<std::string> entities;
  std::vector<std::string> categories;
  std::vector<int> years;
  std::optional<std::string> blocs_path;
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> output_path;
  std::optional<std::string> spec_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> corpus_out;
  std::optional<std::string> normalized_out;
  std::optional<Date> retrieval_date;
  unsigned workers = 1;
  bool help = false;
  std::string help_text;
};

/// Validates argv (argv[0] is the program name). Throws UsageError.
CommandPlan parse_args(const std::vector<std::string>& argv);

/// Runs the plan and returns the process exit status: 0 success, 1 data or
/// computation error (message on `err`).
int execute(const CommandPlan& plan, std::ostream& out, std::ostream& err);

/// parse_args + execute; usage errors return 2.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Builds the output tables without writing them.
std::vector<OutputTable> build_tables(const CommandPlan& plan);

}  // namespace citerank::cli
