#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "sodlib/golay_numbers.hpp"
#include "sodlib/sequences.hpp"
#include "sodlib/zs_doubling.hpp"

namespace sod::io {

using json = nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    parse_fail(std::string("bad field \"") + key + "\": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// SignedPerm

inline json to_json(const SignedPerm& s) {
  return json{{"degree", s.degree()}, {"perm", s.perm_array()}, {"sign", s.sign_array()}};
}

inline SignedPerm signed_perm_from_json(const json& j) {
  const auto degree = get_field<std::size_t>(j, "degree");
  const auto perm = get_field<std::vector<std::uint32_t>>(j, "perm");
  const auto sign = get_field<std::vector<int>>(j, "sign");
  if (perm.size() != degree) parse_fail("perm length differs from degree");
  try {
    return SignedPerm::from_arrays(perm, sign);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

// ---------------------------------------------------------------------------
// Designs

inline json cell_to_json(const Cell& c) {
  if (!c) return nullptr;
  return json{{"var", c->var}, {"coeff", to_json(c->coeff)}};
}

inline Cell cell_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return Entry{signed_perm_from_json(get_field<json>(j, "coeff")), get_field<int>(j, "var")};
}

inline json to_json(const DesignMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.order(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.order(); ++k) row.push_back(cell_to_json(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  return json{{"order", m.order()}, {"nvars", m.nvars()}, {"group_degree", m.group_degree()}, {"entries", rows}};
}

inline json to_json(const CirculantDesign& c) {
  json row = json::array();
  for (const auto& e : c.first_row()) row.push_back(cell_to_json(e));
  return json{{"order", c.order()},
              {"nvars", c.nvars()},
              {"group_degree", c.group_degree()},
              {"circulant", true},
              {"first_row", row}};
}

using AnyDesign = std::variant<DesignMatrix, CirculantDesign>;

inline AnyDesign design_from_json(const json& j) {
  const auto order = get_field<std::size_t>(j, "order");
  const auto nvars = get_field<std::size_t>(j, "nvars");
  const auto degree = get_field<std::size_t>(j, "group_degree");
  try {
    if (j.value("circulant", false)) {
      const auto row = get_field<json>(j, "first_row");
      if (!row.is_array() || row.size() != order) parse_fail("first_row length differs from order");
      std::vector<Cell> cells;
      for (const auto& e : row) cells.push_back(cell_from_json(e));
      return CirculantDesign(std::move(cells), nvars, degree);
    }
    const auto rows = get_field<json>(j, "entries");
    if (!rows.is_array() || rows.size() != order) parse_fail("entries has the wrong number of rows");
    DesignMatrix m(order, nvars, degree);
    for (std::size_t i = 0; i < order; ++i) {
      if (!rows[i].is_array() || rows[i].size() != order) parse_fail("entries row " + std::to_string(i) + " has wrong length");
      for (std::size_t k = 0; k < order; ++k) m.set(i, k, cell_from_json(rows[i][k]));
    }
    return m;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    parse_fail(e.what());
  }
}

inline json to_json(const SodType& t) { return json{{"order", t.order}, {"weights", t.weights}}; }

// ---------------------------------------------------------------------------
// Sequences and pairs. Entries: "0", "+1", "-i", "+x1", "-i*x2", ...

inline std::string seq_cell_to_string(const SeqCell& c, bool tag_vars) {
  if (!c) return "0";
  const std::string u = c->unit.to_string();  // "+1", "-1", "+i", "-i"
  if (!tag_vars) return u;
  const std::string var = "x" + std::to_string(c->var);
  if (c->unit.is_real()) return std::string(1, u[0]) + var;
  return u + "*" + var;
}

inline SeqCell seq_cell_from_string(const std::string& s) {
  if (s == "0") return std::nullopt;
  if (s.size() < 2 || (s[0] != '+' && s[0] != '-')) parse_fail("bad sequence entry \"" + s + "\"");
  const bool neg = s[0] == '-';
  std::string rest = s.substr(1);
  bool imag = false;
  int var = 1;
  if (rest[0] == 'i') {
    imag = true;
    rest = rest.substr(1);
    if (!rest.empty()) {
      if (rest[0] != '*' || rest.size() == 1) parse_fail("bad sequence entry \"" + s + "\"");
      rest = rest.substr(1);
    }
  } else if (rest[0] == '1') {
    rest = rest.substr(1);
    if (!rest.empty()) {
      if (rest[0] != '*' || rest.size() == 1) parse_fail("bad sequence entry \"" + s + "\"");
      rest = rest.substr(1);
    }
  }
  if (!rest.empty()) {
    if (rest[0] != 'x' || rest.size() < 2) parse_fail("bad sequence entry \"" + s + "\"");
    try {
      std::size_t used = 0;
      var = std::stoi(rest.substr(1), &used);
      if (used != rest.size() - 1 || var < 1) parse_fail("bad variable in \"" + s + "\"");
    } catch (const std::logic_error&) {
      parse_fail("bad variable in \"" + s + "\"");
    }
  }
  Unit u = imag ? Unit::i() : Unit::one();
  if (neg) u = -u;
  return SeqEntry{u, var};
}

inline json to_json(const GolaySeq& s, bool tag_vars) {
  json a = json::array();
  for (const auto& e : s.entries()) a.push_back(seq_cell_to_string(e, tag_vars));
  return a;
}

inline GolaySeq seq_from_json(const json& j, Alphabet alphabet) {
  if (!j.is_array()) parse_fail("sequence must be an array");
  std::vector<SeqCell> cells;
  for (const auto& e : j) {
    if (!e.is_string()) parse_fail("sequence entries must be strings");
    cells.push_back(seq_cell_from_string(e.get<std::string>()));
  }
  try {
    return GolaySeq(std::move(cells), alphabet);
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

inline json to_json(const GolayPair& p) {
  const bool tag = p.variables > 1;
  return json{{"length", p.length()},
              {"alphabet", to_string(p.alphabet())},
              {"first", to_json(p.first, tag)},
              {"second", to_json(p.second, tag)}};
}

/// Parses and runs the NPAF oracle; pairs that fail are rejected.
inline GolayPair pair_from_json(const json& j) {
  const auto length = get_field<std::size_t>(j, "length");
  const auto al = get_field<std::string>(j, "alphabet");
  if (al != "real" && al != "complex") parse_fail("alphabet must be \"real\" or \"complex\"");
  const Alphabet alphabet = al == "real" ? Alphabet::Real : Alphabet::Complex;
  GolaySeq a = seq_from_json(get_field<json>(j, "first"), alphabet);
  GolaySeq b = seq_from_json(get_field<json>(j, "second"), alphabet);
  if (a.length() != length || b.length() != length) parse_fail("sequence length differs from \"length\"");
  return make_verified_pair(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Remrep chains

inline json to_json(const Relations& r) { return json{{"square", r.square}, {"commutation", r.commutation}}; }

inline json to_json(const RemrepChain& c) {
  json levels = json::array();
  for (const auto& lv : c.levels()) {
    json gens = json::array();
    for (const auto& g : lv.generators) gens.push_back(to_json(g));
    json blocks = json::array();
    for (const auto& b : lv.blocks) {
      blocks.push_back(json{{"upper", to_json(b.upper)}, {"lower", to_json(b.lower)}, {"antidiagonal", b.antidiagonal}});
    }
    levels.push_back(json{{"degree", lv.degree}, {"generators", gens}, {"blocks", blocks}, {"relations", to_json(lv.relations)}});
  }
  return json{{"base", to_string(c.base())}, {"levels", levels}};
}

/**
 * Reads a chain and re-checks it: degrees double level by level, every
 * generator equals its block image and the stored relations are recomputed.
 */
inline RemrepChain chain_from_json(const json& j) {
  const auto base_s = get_field<std::string>(j, "base");
  ChainBase base;
  if (base_s == "real") {
    base = ChainBase::Real;
  } else if (base_s == "complex") {
    base = ChainBase::Complex;
  } else if (base_s == "quaternion") {
    base = ChainBase::Quaternion;
  } else {
    parse_fail("unknown chain base \"" + base_s + "\"");
  }
  const auto levels_j = get_field<json>(j, "levels");
  if (!levels_j.is_array() || levels_j.empty()) parse_fail("chain needs a nonempty level list");
  std::vector<ChainLevel> levels;
  for (const auto& lj : levels_j) {
    ChainLevel lv;
    lv.degree = get_field<std::size_t>(lj, "degree");
    for (const auto& g : get_field<json>(lj, "generators")) lv.generators.push_back(signed_perm_from_json(g));
    if (lj.contains("blocks")) {
      for (const auto& b : lj.at("blocks")) {
        lv.blocks.push_back(BlockImage{signed_perm_from_json(get_field<json>(b, "upper")),
                                       signed_perm_from_json(get_field<json>(b, "lower")),
                                       get_field<bool>(b, "antidiagonal")});
      }
    }
    lv.relations = compute_relations(lv.generators);
    if (lj.contains("relations")) {
      Relations stored{get_field<std::vector<int>>(lj.at("relations"), "square"),
                       get_field<std::vector<std::vector<int>>>(lj.at("relations"), "commutation")};
      if (!(stored == lv.relations)) throw Error(ErrorKind::RelationViolation, "stored relations do not hold");
    }
    for (const auto& g : lv.generators)
      if (g.degree() != lv.degree) parse_fail("generator degree differs from level degree");
    levels.push_back(std::move(lv));
  }
  const RemrepChain expect_base = base == ChainBase::Real      ? RemrepChain::real()
                                  : base == ChainBase::Complex ? RemrepChain::complex()
                                                               : RemrepChain::quaternion();
  if (!(levels.front() == expect_base.top())) parse_fail("chain base level does not match its declared base");
  for (std::size_t r = 1; r < levels.size(); ++r) {
    if (levels[r].degree != 2 * levels[r - 1].degree) parse_fail("chain degrees must double per level");
    if (levels[r].blocks.size() != levels[r].generators.size()) parse_fail("chain level lacks block data");
    for (std::size_t g = 0; g < levels[r].generators.size(); ++g)
      if (!(levels[r].blocks[g].image() == levels[r].generators[g]))
        throw Error(ErrorKind::RelationViolation, "generator differs from its block image");
  }
  return RemrepChain::from_levels(base, std::move(levels));
}

// ---------------------------------------------------------------------------

inline json to_json(const Decomposition& d) { return json{{"target", d.target}, {"parts", d.parts}}; }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace sod::io
