#include "citerank/entity.hpp"

#include <fstream>
#include <sstream>

namespace citerank {

std::string_view to_string(CountingMethod method) {
  return method == CountingMethod::WholeNumber ? "whole" : "fractional";
}

std::map<std::string, Rational> country_attribution(const PublicationRecord& record, CountingMethod method) {
  std::map<std::string, Rational> credit;
  const auto n = static_cast<std::int64_t>(record.countries.size());
  for (const auto& c : record.countries) {
    credit[c] = method == CountingMethod::WholeNumber ? Rational(1) : Rational(1, n);
  }
  return credit;
}

void BlocMap::add(std::string country, std::string bloc) { blocs_[std::move(bloc)].insert(std::move(country)); }

bool BlocMap::is_bloc(std::string_view code) const { return blocs_.find(code) != blocs_.end(); }

std::set<std::string> BlocMap::members(std::string_view bloc) const {
  if (auto it = blocs_.find(bloc); it != blocs_.end()) return it->second;
  return {};
}

BlocMap BlocMap::parse(std::string_view text) {
  BlocMap map;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto sep = line.find_first_of(",\t");
    if (sep == std::string::npos) {
      throw LoadError("bloc mapping line " + std::to_string(line_no) + ": expected two columns");
    }
    auto country = trim(line.substr(0, sep));
    auto bloc = trim(line.substr(sep + 1));
    if (line_no == 1 && country == "country_code" && bloc == "bloc_code") continue;
    if (country.empty() || bloc.empty() || bloc.find_first_of(",\t") != std::string::npos) {
      throw LoadError("bloc mapping line " + std::to_string(line_no) + ": expected two columns");
    }
    map.add(std::move(country), std::move(bloc));
  }
  return map;
}

BlocMap BlocMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open bloc mapping '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

EntityMatcher::EntityMatcher(const Corpus& corpus, std::string entity, const BlocMap* blocs)
    : corpus_(&corpus), entity_(std::move(entity)), member_codes_(corpus.country_codes().size(), false) {
  const auto& table = corpus.country_codes();
  if (auto id = table.find(entity_)) member_codes_[*id] = true;
  if (blocs != nullptr) {
    for (const auto& country : blocs->members(entity_)) {
      if (auto id = table.find(country)) member_codes_[*id] = true;
    }
  }
}

std::uint32_t EntityMatcher::hits(Corpus::Index i) const {
  std::uint32_t n = 0;
  for (CodeId c : corpus_->countries(i)) n += member_codes_[c] ? 1u : 0u;
  return n;
}

void EntityMatcher::credit(Corpus::Index i, CountingMethod method, CreditTally& tally) const {
  const auto h = hits(i);
  if (h == 0) return;
  if (method == CountingMethod::WholeNumber) {
    tally.add(1, 1);
  } else {
    tally.add(h, static_cast<std::uint32_t>(corpus_->countries(i).size()));
  }
}

}  // namespace citerank
