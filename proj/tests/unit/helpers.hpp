#pragma once

#include <string>
#include <vector>

#include "sodlib/design_matrix.hpp"
#include "sodlib/sequences.hpp"

namespace sodtest {

using namespace sod;

/// "0", "x1", "-x2", "ix3", "-ix1": unit times variable, embedded at `degree`.
inline Cell tok(const std::string& t, std::size_t degree) {
  if (t == "0") return std::nullopt;
  std::size_t k = 0;
  Unit u = Unit::one();
  if (t[k] == '-') {
    u = -u;
    ++k;
  }
  if (t[k] == 'i') {
    u = u * Unit::i();
    ++k;
  }
  if (t[k] != 'x') throw std::invalid_argument("bad token " + t);
  return Entry{u.embed(degree), std::stoi(t.substr(k + 1))};
}

inline CirculantDesign circ(const std::vector<std::string>& row, std::size_t nvars, std::size_t degree) {
  std::vector<Cell> cells;
  for (const auto& t : row) cells.push_back(tok(t, degree));
  return CirculantDesign(std::move(cells), nvars, degree);
}

/// Sequence from unit strings "+1", "-i", "0" in variable 1.
inline GolaySeq seq(const std::vector<std::string>& xs, Alphabet al = Alphabet::Complex) {
  std::vector<SeqCell> cells;
  for (const auto& x : xs) {
    if (x == "0") {
      cells.push_back(std::nullopt);
      continue;
    }
    Unit u = x[1] == 'i' ? Unit::i() : Unit::one();
    if (x[0] == '-') u = -u;
    cells.push_back(SeqEntry{u, 1});
  }
  return GolaySeq(std::move(cells), al);
}

/// The four real circulants of the 3-tuple worked example (variables a=1, b=2, c=3).
inline std::vector<CirculantDesign> example_rows() {
  return {
      circ({"x1", "0", "0", "0", "0", "0", "x1", "0", "0", "0", "0", "0"}, 3, 1),
      circ({"0", "0", "0", "x1", "0", "0", "0", "0", "0", "-x1", "0", "0"}, 3, 1),
      circ({"0", "x2", "x3", "0", "0", "0", "0", "0", "0", "0", "x3", "-x2"}, 3, 1),
      circ({"0", "0", "0", "0", "x3", "-x2", "0", "-x2", "-x3", "0", "0", "0"}, 3, 1),
  };
}

}  // namespace sodtest
