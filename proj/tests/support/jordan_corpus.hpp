#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace testsupport {

/// One entry of data/matrices/jordan_corpus.txt: a parabolic element and
/// its expected hyperbolic, unipotent and elliptic factors.
struct JordanCase {
  std::string name;
  int n = 0;
  conflab::ExactMatrix p, h, u, e;
};

inline std::vector<JordanCase> jordan_corpus() {
  std::ifstream in(data_dir() / "matrices" / "jordan_corpus.txt");
  std::vector<JordanCase> out;
  std::string line;
  JordanCase cur;
  std::string section;
  std::vector<std::string> rows;
  auto flush = [&] {
    if (section.empty()) return;
    auto m = parse_exact_rows(rows);
    if (section == "p") cur.p = m;
    if (section == "h") cur.h = m;
    if (section == "u") cur.u = m;
    if (section == "e") cur.e = m;
    rows.clear();
    section.clear();
  };
  while (std::getline(in, line)) {
    if (line.rfind("case ", 0) == 0) {
      std::istringstream is(line.substr(5));
      cur = JordanCase{};
      is >> cur.name >> cur.n;
    } else if (line == "p" || line == "h" || line == "u" || line == "e") {
      flush();
      section = line;
    } else if (line == "end") {
      flush();
      out.push_back(cur);
    } else if (!line.empty()) {
      rows.push_back(line);
    }
  }
  return out;
}

}  // namespace testsupport
