// Writes the reconstructed fixture corpora and the bloc mapping to a directory.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "citerank/fixtures.hpp"

namespace fs = std::filesystem;
using namespace citerank;

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? argv[1] : "fixtures";
  try {
    fs::create_directories(dir);
    save_corpus(fixtures::national_2019(), (dir / "national_2019.csv").string());
    save_corpus(fixtures::subject_categories_2019(), (dir / "categories_2019.csv").string());
    const auto windows = fixtures::citation_windows();
    save_corpus(windows, (dir / "windows_2015_2019.csv").string());
    std::ofstream blocs(dir / "blocs.csv");
    blocs << "country_code,bloc_code\nDE,EU27\nDE,EUUK\nUK,EUUK\n";
    if (!blocs) throw Error("cannot write blocs.csv");
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << '\n';
    return 1;
  }
  std::cout << "fixtures written to " << dir.string() << '\n';
  return 0;
}
