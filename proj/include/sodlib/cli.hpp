#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sodlib/json_io.hpp"
#include "sodlib/od_converter.hpp"
#include "sodlib/pipeline.hpp"

#ifndef SODLIB_DATA_DIR
#define SODLIB_DATA_DIR ""
#endif

namespace sod::cli {

using io::json;

enum ExitCode : int { kOk = 0, kVerifyFailed = 2, kInputError = 3, kCapExceeded = 4 };

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::NotGolay:
    case ErrorKind::NotReachable:
    case ErrorKind::InvalidArgument:
    case ErrorKind::OddTarget:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::BudgetExceeded:
      return kInputError;
    case ErrorKind::DenseCapExceeded:
      return kCapExceeded;
    default:
      return kVerifyFailed;
  }
}

struct Common {
  std::vector<std::string> golay_data;
  bool no_default_data = false;
  std::string format = "text";
  unsigned threads = 1;

  bool as_json() const { return format == "json"; }
};

inline std::string join(const std::vector<std::uint64_t>& xs, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
  return os.str();
}

inline std::string type_string(const SodType& t) { return "SOD(" + std::to_string(t.order) + "; " + join(t.weights) + ")"; }

/// Loads the shipped data directory (unless disabled) plus every --golay-data file.
inline void load_database(GolayDatabase& db, const Common& c) {
  namespace fs = std::filesystem;
  if (!c.no_default_data && c.golay_data.empty()) {
    const fs::path dir(SODLIB_DATA_DIR);
    std::error_code ec;
    if (!dir.empty() && fs::is_directory(dir, ec)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) db.load_file(f.string());
    }
  }
  for (const auto& f : c.golay_data) db.load_file(f);
}

inline json design_file(const CirculantDesign& d, const SodType& t) {
  json j = io::to_json(d);
  j["type"] = io::to_json(t);
  return j;
}

inline json design_file(const DesignMatrix& d, const SodType& t) {
  json j = io::to_json(d);
  j["type"] = io::to_json(t);
  return j;
}

inline SodType type_from_file(const json& j, const io::AnyDesign& d) {
  if (j.contains("type")) {
    const auto& t = j.at("type");
    return SodType{io::get_field<std::size_t>(t, "order"), io::get_field<std::vector<std::uint64_t>>(t, "weights")};
  }
  return std::visit([](const auto& m) { return infer_type(m); }, d);
}

struct Verdicts {
  SodReport sod;
  bool normal = false;
  bool quasisymmetric = false;
  bool decomposition = false;
  OddFullCheck odd = OddFullCheck::NotApplicable;

  bool ok() const { return sod.ok && decomposition && odd != OddFullCheck::MustEven; }

  json to_json() const {
    json j{{"verify_sod", sod.ok},
           {"is_normal", normal},
           {"is_quasisymmetric", quasisymmetric},
           {"decomposition", decomposition},
           {"odd_full_guard", std::string(to_string(odd))}};
    if (!sod.ok) j["first_failure"] = json{{"row", sod.row}, {"col", sod.col}, {"reason", sod.reason}};
    return j;
  }
};

template <class M>
Verdicts run_checks(const M& m, const SodType& t) {
  Verdicts v;
  v.odd = reject_odd_full(m);
  v.sod = verify_sod_report(m, t);
  v.normal = is_normal(m);
  v.quasisymmetric = is_quasisymmetric(m);
  auto parts = decompose(m);
  // variables beyond the type's weight list must be unused
  bool extra_used = false;
  for (std::size_t k = t.weights.size(); k < parts.size(); ++k)
    if (!support(parts[k]).empty()) extra_used = true;
  parts.resize(std::min(parts.size(), t.weights.size()));
  v.decomposition = !extra_used && check_decomposition(parts, t);
  return v;
}

inline void print_verdicts(std::ostream& out, const Verdicts& v) {
  auto yn = [](bool b) { return b ? "pass" : "FAIL"; };
  out << "verify_sod:        " << yn(v.sod.ok);
  if (!v.sod.ok) out << " (first failure at row " << v.sod.row << ", col " << v.sod.col << ": " << v.sod.reason << ")";
  out << "\nis_normal:         " << yn(v.normal) << "\nis_quasisymmetric: " << (v.quasisymmetric ? "yes" : "no")
      << "\ndecomposition:     " << yn(v.decomposition) << "\nodd-full guard:    " << to_string(v.odd);
  if (v.odd == OddFullCheck::MustEven) out << " (a full SOD of odd order > 1 cannot exist)";
  out << "\n";
}

inline json bounds_json(const std::vector<std::uint64_t>& tuple) {
  const auto c = canonicalize_tuple(tuple);
  const auto third = bound_thirdbound(tuple);
  const auto second = bound_secondbound(tuple);
  const auto last = bound_lastbound(tuple);
  const auto n = family_exponent(c);
  auto bv = [](const BoundValue& b) { return json{{"value", b.value}, {"ceiling", b.ceiling}}; };
  return json{{"tuple", tuple},
              {"canonical", json{{"v", c.v}, {"w", c.w}, {"u", c.u()}}},
              {"thirdbound", bv(third)},
              {"secondbound", bv(second)},
              {"lastbound", bv(last)},
              {"family_exponent", n},
              {"family_exponent_statement", family_exponent_statement(c)},
              {"od_exponent", n + 2},
              {"od_order", "2^" + std::to_string(n + 2) + "*" + std::to_string(c.u())}};
}

inline void print_bounds(std::ostream& out, const json& b) {
  auto line = [&](const char* name, const json& v) {
    out << name << v.at("value").get<double>() << " (exponent " << v.at("ceiling").get<long>() << ")\n";
  };
  line("thirdbound:  ", b.at("thirdbound"));
  line("secondbound: ", b.at("secondbound"));
  line("lastbound:   ", b.at("lastbound"));
  out << "family exponent n = " << b.at("family_exponent").get<std::uint64_t>() << " (statement form "
      << b.at("family_exponent_statement").get<std::uint64_t>() << ")\n"
      << "OD exponent n + 2 = " << b.at("od_exponent").get<std::uint64_t>() << ": OD(" << b.at("od_order").get<std::string>()
      << "; ...)\n";
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::vector<std::uint64_t> tuple;
  std::string out_dir = "sod_out";
  bool allow_fallback = false;
};

inline int cmd_construct(const ConstructArgs& a, const Common& c, const std::vector<std::string>& argv,
                         std::ostream& out) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  GolayDatabase db;
  load_database(db, c);
  const auto r = construct(a.tuple, db, ConstructOptions{a.allow_fallback});
  const SodType type = r.family.type;
  const Verdicts v = run_checks(r.fold.sod, type);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  const std::string sod_path = (dir / "sod.json").string();
  const std::string chain_path = (dir / "chain.json").string();
  const std::string family_path = (dir / "family.json").string();
  const std::string manifest_path = (dir / "manifest.json").string();

  io::write_json_file(sod_path, design_file(r.fold.sod, type));
  io::write_json_file(chain_path, io::to_json(r.fold.chain));
  json members = json::array();
  for (std::size_t k = 0; k < r.family.members.size(); ++k) {
    const auto& l = r.family.layout[k];
    json m = io::to_json(r.family.members[k]);
    m["name"] = l.name;
    m["offset"] = l.offset;
    m["length"] = l.length;
    members.push_back(std::move(m));
  }
  io::write_json_file(family_path, json{{"order", r.family.order}, {"type", io::to_json(type)}, {"members", members}});

  // round trip: what was written must re-verify
  const auto back = io::design_from_json(io::read_json_file(sod_path));
  const bool reload_ok = std::visit([&](const auto& m) { return verify_sod(m, type); }, back);
  const auto chain_back = io::chain_from_json(io::read_json_file(chain_path));
  const bool chain_ok = chain_back == r.fold.chain;

  json decomp{{"v", json::array()}, {"w", json::array()}};
  for (const auto& d : r.v_parts) decomp["v"].push_back(io::to_json(d));
  for (const auto& d : r.w_parts) decomp["w"].push_back(io::to_json(d));
  const auto bounds = bounds_json(a.tuple);
  const std::uint64_t n = static_cast<std::uint64_t>(r.exponent);
  json verdicts = v.to_json();
  verdicts["reload_verified"] = reload_ok;
  verdicts["chain_reloaded"] = chain_ok;
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json manifest{{"command", "construct"},
                {"inputs", argv},
                {"tuple", a.tuple},
                {"canonical", json{{"v", r.canon.v}, {"w", r.canon.w}, {"u", r.canon.u()}}},
                {"decompositions", decomp},
                {"fallback_used", r.fallback_used},
                {"sod_type", io::to_json(type)},
                {"remrep_degree", r.fold.chain.top_degree()},
                {"remrep_exponent", n},
                {"optimal_exponent", r.optimal},
                {"od_exponent", n + 2},
                {"bounds", bounds},
                {"outputs", json{{"sod", sod_path}, {"chain", chain_path}, {"family", family_path}}},
                {"verdicts", verdicts},
                {"wall_time_s", wall}};
  io::write_json_file(manifest_path, manifest);

  const bool ok = v.ok() && reload_ok && chain_ok;
  if (c.as_json()) {
    out << manifest.dump(2) << "\n";
  } else {
    out << type_string(type) << " built from " << r.family.members.size() << " circulants, verified: " << (ok ? "yes" : "NO")
        << "\nremrep degree 2^" << n << " = " << r.fold.chain.top_degree() << "; n = " << n;
    if (r.fallback_used) out << " (fallback decomposition; optimum " << r.optimal << ")";
    out << "\n";
    print_bounds(out, bounds);
    out << "wrote " << sod_path << ", " << chain_path << ", " << family_path << ", " << manifest_path << "\n";
  }
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

inline int cmd_verify(const std::string& file, const Common& c, std::ostream& out) {
  const json j = io::read_json_file(file);
  const auto d = io::design_from_json(j);
  const SodType t = type_from_file(j, d);
  const Verdicts v = std::visit([&](const auto& m) { return run_checks(m, t); }, d);
  if (c.as_json()) {
    json r = v.to_json();
    r["file"] = file;
    r["type"] = io::to_json(t);
    r["ok"] = v.ok();
    out << r.dump(2) << "\n";
  } else {
    out << file << ": " << type_string(t) << "\n";
    print_verdicts(out, v);
  }
  return v.ok() ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

struct ConvertArgs {
  std::string sod_file;
  std::string chain_file;
  std::string out_file = "od.json";
  std::size_t max_order = kDefaultDenseCap;
};

inline RemrepChain chain_for(std::size_t degree, const std::string& chain_file) {
  if (!chain_file.empty()) return io::chain_from_json(io::read_json_file(chain_file));
  switch (degree) {
    case 1: return RemrepChain::real();
    case 2: return RemrepChain::complex();
    case 4: return RemrepChain::quaternion();
    default:
      throw Error(ErrorKind::InvalidArgument,
                  "a design of group degree " + std::to_string(degree) + " needs --chain");
  }
}

inline int cmd_convert(const ConvertArgs& a, const Common& c, std::ostream& out) {
  const json j = io::read_json_file(a.sod_file);
  const auto d = io::design_from_json(j);
  return std::visit(
      [&](const auto& m) {
        const std::size_t degree = m.group_degree();
        const RemrepChain chain = chain_for(degree, a.chain_file);
        const std::size_t order = degree * m.order();
        if (order > a.max_order) {
          const CertifiedOd cert = certify_od(m, chain);
          json manifest{{"command", "convert"},
                        {"status", "certified"},
                        {"sod_file", a.sod_file},
                        {"sod_type", io::to_json(cert.sod_type)},
                        {"sod_verified", cert.sod_verified},
                        {"chain_checked", cert.chain_checked},
                        {"remrep_degree", cert.remrep_degree},
                        {"hadamard", cert.hadamard},
                        {"od_order", cert.od_order},
                        {"od_weights", cert.od_weights},
                        {"max_order", a.max_order},
                        {"note", "replacing each coefficient by its monomial image times the Hadamard matrix gives "
                                 "the OD; it is not materialised because its order exceeds the cap"}};
          io::write_json_file(a.out_file, manifest);
          if (c.as_json()) {
            out << manifest.dump(2) << "\n";
          } else {
            out << "OD(" << cert.od_order << "; " << join(cert.od_weights) << ") exceeds cap " << a.max_order
                << "; certified manifest written to " << a.out_file << "\n";
          }
          return static_cast<int>(kCapExceeded);
        }
        const DesignMatrix od = [&] {
          if (a.chain_file.empty() && degree == 2) return cod_to_od(m, a.max_order);
          if (a.chain_file.empty() && degree == 4) return qod_to_od(m, a.max_order);
          return sod_to_od(m, chain, sylvester(static_cast<unsigned>(degree_exponent(degree))), a.max_order);
        }();
        const SodType t = infer_type(od);
        io::write_json_file(a.out_file, design_file(od, t));
        if (c.as_json()) {
          out << json{{"command", "convert"}, {"status", "materialised"}, {"od_type", io::to_json(t)}, {"out", a.out_file}}.dump(2)
              << "\n";
        } else {
          out << "OD(" << t.order << "; " << join(t.weights) << ") verified, written to " << a.out_file << "\n";
        }
        return static_cast<int>(kOk);
      },
      d);
}

// ---------------------------------------------------------------------------

inline int cmd_bounds(const std::vector<std::uint64_t>& tuple, const Common& c, std::ostream& out) {
  const json b = bounds_json(tuple);
  if (c.as_json()) {
    out << b.dump(2) << "\n";
  } else {
    const auto canon = canonicalize_tuple(tuple);
    out << "tuple (" << join(tuple) << ") -> canonical (1; v = (" << join(canon.v) << "); w = (" << join(canon.w)
        << ")), order " << 4 * canon.u() << "\n";
    print_bounds(out, b);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct GolayArgs {
  std::size_t length = 0;
  std::uint64_t decompose = 0;
  std::size_t search = 0;
  std::string alphabet = "complex";
  bool all = false;
  std::string out_file;
};

inline int cmd_golay(const GolayArgs& a, const Common& c, std::ostream& out) {
  if (a.decompose) {
    const auto d = lc_decomposition(a.decompose);
    if (c.as_json()) {
      out << json{{"target", d.target}, {"lc", d.parts.size()}, {"parts", d.parts}}.dump(2) << "\n";
    } else {
      out << "lc(" << d.target << ") = " << d.parts.size() << ": [" << join(d.parts, ", ") << "]\n";
    }
    return kOk;
  }
  std::vector<GolayPair> pairs;
  if (a.length) {
    GolayDatabase db;
    load_database(db, c);
    pairs.push_back(db.pair_for_length(a.length));
  } else {
    SearchOptions opts;
    opts.threads = c.threads;
    opts.max_results = a.all ? 0 : 1;
    pairs = search_pairs(a.search, a.alphabet == "real" ? Alphabet::Real : Alphabet::Complex, opts);
    if (pairs.empty()) {
      if (c.as_json()) {
        out << json{{"length", a.search}, {"alphabet", a.alphabet}, {"pairs", json::array()}}.dump(2) << "\n";
      } else {
        out << "no " << a.alphabet << " pair of length " << a.search << "\n";
      }
      return kInputError;
    }
  }
  json arr = json::array();
  for (const auto& p : pairs) arr.push_back(io::to_json(p));
  const json payload = arr.size() == 1 ? arr[0] : arr;
  if (!a.out_file.empty()) io::write_json_file(a.out_file, payload);
  if (c.as_json()) {
    out << payload.dump(2) << "\n";
  } else {
    for (const auto& p : pairs) {
      out << "length " << p.length() << " (" << to_string(p.alphabet()) << ", verified)\n  A: "
          << io::to_json(p.first, p.variables > 1).dump() << "\n  B: " << io::to_json(p.second, p.variables > 1).dump()
          << "\n";
    }
    if (!a.out_file.empty()) out << "wrote " << a.out_file << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Construct and verify signed orthogonal designs"};
  app.name("sodtool");
  app.require_subcommand(1);
  Common common;
  app.add_option("--golay-data", common.golay_data, "Extra verified Golay pair file (repeatable)")
      ->check(CLI::ExistingFile);
  app.add_flag("--no-default-data", common.no_default_data, "Skip the shipped Golay data directory");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", common.threads, "Worker thread cap")->check(CLI::PositiveNumber);

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a circulant SOD for a tuple");
  construct_cmd->add_option("--tuple", ca.tuple, "Comma-separated positive integers")->required()->delimiter(',');
  construct_cmd->add_option("--out", ca.out_dir, "Output directory");
  construct_cmd->add_flag("--allow-fallback", ca.allow_fallback, "Accept non-optimal Golay decompositions");

  std::string verify_file;
  auto* verify_cmd = app.add_subcommand("verify", "Check a design file");
  verify_cmd->add_option("file", verify_file, "Design JSON")->required()->check(CLI::ExistingFile);

  ConvertArgs cv;
  auto* convert_cmd = app.add_subcommand("convert", "Turn an SOD into a real OD");
  convert_cmd->add_option("--sod", cv.sod_file, "SOD design JSON")->required()->check(CLI::ExistingFile);
  convert_cmd->add_option("--chain", cv.chain_file, "Remrep chain JSON")->check(CLI::ExistingFile);
  convert_cmd->add_option("--out", cv.out_file, "OD or manifest output path");
  convert_cmd->add_option("--max-order", cv.max_order, "Largest OD order to materialise")->check(CLI::PositiveNumber);

  std::vector<std::uint64_t> bounds_tuple;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the exponent bounds for a tuple");
  bounds_cmd->add_option("--tuple", bounds_tuple, "Comma-separated positive integers")->required()->delimiter(',');

  GolayArgs ga;
  auto* golay_cmd = app.add_subcommand("golay", "Golay pairs and decompositions");
  auto* g_len = golay_cmd->add_option("--length", ga.length, "Derive a verified pair of this length")
                    ->check(CLI::PositiveNumber);
  auto* g_dec = golay_cmd->add_option("--decompose", ga.decompose, "Least Golay-number decomposition")
                    ->check(CLI::PositiveNumber);
  auto* g_search = golay_cmd->add_option("--search", ga.search, "Exhaustive pair search at this length")
                       ->check(CLI::PositiveNumber);
  golay_cmd->add_option("--alphabet", ga.alphabet, "Search alphabet")->check(CLI::IsMember({"real", "complex"}));
  golay_cmd->add_flag("--all", ga.all, "Enumerate every normalised pair");
  golay_cmd->add_option("--out", ga.out_file, "Write the pair(s) here");
  g_len->excludes(g_dec)->excludes(g_search);
  g_dec->excludes(g_search);
  golay_cmd->callback([&] {
    if (g_len->count() + g_dec->count() + g_search->count() != 1)
      throw CLI::ValidationError("golay", "give one of --length, --decompose, --search");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  set_max_threads(common.threads);
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (*construct_cmd) return cmd_construct(ca, common, args, out);
    if (*verify_cmd) return cmd_verify(verify_file, common, out);
    if (*convert_cmd) return cmd_convert(cv, common, out);
    if (*bounds_cmd) return cmd_bounds(bounds_tuple, common, out);
    if (*golay_cmd) return cmd_golay(ga, common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace sod::cli
