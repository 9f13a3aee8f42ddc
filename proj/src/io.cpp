#include "pooling/io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pooling/arrangement.hpp"
#include "pooling/oracle.hpp"

namespace pooling {

using nlohmann::json;

namespace {

Rational rat_from_json(const json& v, const std::string& where) {
  if (v.is_string()) {
    return Rational::from_decimal(v.get<std::string>());
  }
  if (v.is_number_integer()) {
    return Rational(static_cast<long>(v.get<std::int64_t>()));
  }
  if (v.is_number_unsigned()) {
    return Rational(static_cast<long>(v.get<std::uint64_t>()));
  }
  if (v.is_number_float()) {
    // Route bare floats through the literal grammar via the shortest decimal
    // text that round-trips, so a file containing 0.1 means one tenth.
    char buf[64];
    const double d = v.get<double>();
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    if (ec != std::errc()) throw ParseError(where + ": unconvertible number");
    return Rational::from_decimal(std::string_view(buf, end - buf));
  }
  throw ParseError(where + ": expected a number or a fraction string");
}

std::vector<Rational> rat_array(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError("missing or non-array field '" + key + "'");
  }
  std::vector<Rational> out;
  out.reserve(j[key].size());
  size_t i = 0;
  for (const auto& v : j[key]) {
    out.push_back(rat_from_json(v, key + "[" + std::to_string(i++) + "]"));
  }
  return out;
}

std::vector<std::vector<Rational>> rat_matrix(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError("missing or non-array field '" + key + "'");
  }
  std::vector<std::vector<Rational>> out;
  size_t r = 0;
  for (const auto& row : j[key]) {
    if (!row.is_array()) throw ParseError(key + " rows must be arrays");
    std::vector<Rational> vals;
    size_t c = 0;
    for (const auto& v : row) {
      vals.push_back(rat_from_json(v, key + "[" + std::to_string(r) + "][" +
                                          std::to_string(c++) + "]"));
    }
    out.push_back(std::move(vals));
    ++r;
  }
  return out;
}

int int_field(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError("missing or non-integer field '" + key + "'");
  }
  return j[key].get<int>();
}

json strings(const std::vector<Rational>& v) {
  json arr = json::array();
  for (const auto& r : v) arr.push_back(r.str());
  return arr;
}

json string_matrix(const std::vector<std::vector<Rational>>& m) {
  json arr = json::array();
  for (const auto& row : m) arr.push_back(strings(row));
  return arr;
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (int i : v) out.push_back(i + 1);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace

PoolingInstance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance file must be a JSON object");

  PoolingInstance inst;
  inst.m = int_field(j, "m");
  inst.n = int_field(j, "n");
  inst.q = int_field(j, "q");
  inst.c_in = rat_array(j, "c_in");
  inst.c_out = rat_array(j, "c_out");
  inst.lambda = rat_matrix(j, "lambda");
  inst.mu = rat_matrix(j, "mu");
  inst.cap_in = rat_array(j, "cap_in");
  inst.cap_out = rat_array(j, "cap_out");
  inst.u_in = rat_array(j, "u_in");
  inst.u_out = rat_array(j, "u_out");
  if (!j.contains("cap_pool")) throw ParseError("missing field 'cap_pool'");
  inst.cap_pool = rat_from_json(j["cap_pool"], "cap_pool");
  if (j.contains("name")) inst.name = j["name"].get<std::string>();
  if (j.contains("seed")) inst.seed = j["seed"].get<std::uint64_t>();
  return inst;
}

PoolingInstance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

std::string serialize_instance(const PoolingInstance& inst) {
  json j;
  j["m"] = inst.m;
  j["n"] = inst.n;
  j["q"] = inst.q;
  j["c_in"] = strings(inst.c_in);
  j["c_out"] = strings(inst.c_out);
  j["lambda"] = string_matrix(inst.lambda);
  j["mu"] = string_matrix(inst.mu);
  j["cap_in"] = strings(inst.cap_in);
  j["cap_pool"] = inst.cap_pool.str();
  j["cap_out"] = strings(inst.cap_out);
  j["u_in"] = strings(inst.u_in);
  j["u_out"] = strings(inst.u_out);
  if (!inst.name.empty()) j["name"] = inst.name;
  if (inst.seed) j["seed"] = *inst.seed;
  return j.dump(2) + "\n";
}

std::string make_report(const PoolingInstance& inst, const Solution& sol,
                        long wall_ms) {
  json j;
  j["value"] = sol.value.str();
  j["x"] = strings(sol.flow.x);
  j["y"] = strings(sol.flow.y);
  const auto p = pool_quality(inst, sol.flow);
  j["p"] = p ? strings(*p) : json::array();
  j["chosen_outputs"] = one_based(sol.chosen_outputs);
  j["removed_outputs"] = one_based(sol.removed_outputs);
  j["stats"] = {{"cells", sol.stats.cells},
                {"lps", sol.stats.lps},
                {"pivots", sol.stats.pivots},
                {"wall_ms", wall_ms}};
  j["mode"] = sol.mode == Mode::Exact ? "exact" : "float";
  return j.dump(2) + "\n";
}

Solution parse_report(const std::string& json_text, const PoolingInstance& inst) {
  Solution sol;
  try {
    const json j = json::parse(json_text);
    sol.value = rat_from_json(j.at("value"), "value");
    for (const auto& v : j.at("x")) sol.flow.x.push_back(rat_from_json(v, "x"));
    for (const auto& v : j.at("y")) sol.flow.y.push_back(rat_from_json(v, "y"));
    for (const auto& v : j.at("chosen_outputs")) {
      sol.chosen_outputs.push_back(v.get<int>() - 1);
    }
    if (j.contains("removed_outputs")) {
      for (const auto& v : j["removed_outputs"]) {
        sol.removed_outputs.push_back(v.get<int>() - 1);
      }
    }
    sol.mode = j.value("mode", "exact") == std::string("float") ? Mode::Float : Mode::Exact;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
  (void)inst;
  return sol;
}

PoolingInstance generate_instance(const GenParams& params) {
  if (params.m < 1 || params.n < 1 || params.q < 1) {
    throw std::invalid_argument("generator dimensions must be positive");
  }

  auto attempt = [&](std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    // Bounded draws use plain modulo on the raw stream so the byte output
    // does not depend on the standard library's distribution internals.
    auto draw_int = [&eng](long lo, long hi) {
      return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    auto draw_rat = [&](long lo, long hi) {
      const long den = draw_int(1, 64);
      const long num = draw_int(lo * den, hi * den);
      return Rational(num, den);
    };

    PoolingInstance inst;
    inst.m = params.m;
    inst.n = params.n;
    inst.q = params.q;
    for (int i = 0; i < params.m; ++i) inst.c_in.push_back(draw_rat(0, 5));
    for (int j = 0; j < params.n; ++j) inst.c_out.push_back(draw_rat(-10, 0));
    for (int i = 0; i < params.m; ++i) {
      std::vector<Rational> row;
      for (int k = 0; k < params.q; ++k) row.push_back(draw_rat(0, 10));
      inst.lambda.push_back(std::move(row));
    }
    for (int j = 0; j < params.n; ++j) {
      std::vector<Rational> row;
      for (int k = 0; k < params.q; ++k) row.push_back(draw_rat(0, 10));
      inst.mu.push_back(std::move(row));
    }
    for (int i = 0; i < params.m; ++i) inst.cap_in.push_back(draw_rat(1, 20));
    inst.cap_pool = draw_rat(1, 20);
    for (int j = 0; j < params.n; ++j) inst.cap_out.push_back(draw_rat(1, 20));
    for (int i = 0; i < params.m; ++i) inst.u_in.push_back(draw_rat(1, 20));
    for (int j = 0; j < params.n; ++j) inst.u_out.push_back(draw_rat(1, 20));

    // Keep every output reachable by some blend: raise mu to the smallest
    // input quality value where needed.
    for (int k = 0; k < params.q; ++k) {
      Rational mn = inst.lambda[0][static_cast<size_t>(k)];
      for (int i = 1; i < params.m; ++i) {
        mn = std::min(mn, inst.lambda[static_cast<size_t>(i)][static_cast<size_t>(k)]);
      }
      for (int j = 0; j < params.n; ++j) {
        auto& bound = inst.mu[static_cast<size_t>(j)][static_cast<size_t>(k)];
        if (bound < mn) bound = mn;
      }
    }

    std::ostringstream name;
    name << "gen-m" << params.m << "-n" << params.n << "-q" << params.q
         << "-s" << seed;
    inst.name = name.str();
    inst.seed = seed;
    return inst;
  };

  if (!params.general_position) return attempt(params.seed);

  for (int retry = 0; retry < params.max_retries; ++retry) {
    PoolingInstance inst = attempt(params.seed + static_cast<std::uint64_t>(retry));
    if (is_general_position(build_hyperplanes(inst), inst.m)) return inst;
  }
  std::ostringstream os;
  os << "no general-position instance within " << params.max_retries
     << " retries from seed " << params.seed;
  throw GenerationError(os.str());
}

namespace {

struct SetFormatter {
  const std::vector<int>& v;  // 0-based; printed 1-based
};

std::ostream& operator<<(std::ostream& os, const SetFormatter& f) {
  os << "{";
  for (size_t i = 0; i < f.v.size(); ++i) {
    if (i) os << ",";
    os << f.v[i] + 1;
  }
  return os << "}";
}

int report_invalid(const ValidationReport& rep, std::ostream& err) {
  err << "invalid instance: " << rep.first_message() << "\n";
  return kExitInvalid;
}

}  // namespace

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  PoolingInstance inst;
  try {
    inst = load_instance(args.path);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }
  const ValidationReport rep = validate(inst);
  if (!rep.ok()) return report_invalid(rep, err);

  Solution sol;
  long wall_ms = 0;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    sol = solve_pooling(inst, {.mode = args.mode, .max_inputs = args.max_inputs});
    wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  } catch (const GuardError& e) {
    err << e.what() << "\n";
    return kExitGuard;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }

  out << "value = " << sol.value.str() << "\n";
  out << "chosen_outputs = " << SetFormatter{sol.chosen_outputs} << "\n";
  if (!sol.removed_outputs.empty()) {
    out << "removed_outputs = " << SetFormatter{sol.removed_outputs} << "\n";
  }
  out << "cells = " << sol.stats.cells << ", lps = " << sol.stats.lps
      << ", pivots = " << sol.stats.pivots << ", wall_ms = " << wall_ms << "\n";

  if (!args.report_path.empty()) {
    try {
      write_file(args.report_path, make_report(inst, sol, wall_ms));
    } catch (const std::runtime_error& e) {
      err << e.what() << "\n";
      return kExitInvalid;
    }
  }
  return kExitOk;
}

int run_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  PoolingInstance inst;
  try {
    inst = load_instance(args.path);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }
  const ValidationReport rep = validate(inst);
  if (!rep.ok()) return report_invalid(rep, err);

  try {
    const Solution oracle = solve_by_subset_enumeration(inst);
    const Solution solver =
        solve_pooling(inst, {.mode = Mode::Exact, .max_inputs = args.max_inputs});
    const int r = args.grid > 0 ? args.grid : default_grid_resolution(inst.m);
    const GridScanResult grid = grid_scan(inst, r);

    out << "oracle = " << oracle.value.str() << "\n";
    out << "solver = " << solver.value.str() << "\n";
    out << "grid(r=" << r << ") = " << grid.best_value.str() << "\n";
    const bool agree = oracle.value == solver.value;
    out << (agree ? "AGREE" : "DISAGREE") << "\n";
    return agree ? kExitOk : kExitDisagree;
  } catch (const GuardError& e) {
    err << e.what() << "\n";
    return kExitGuard;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }
}

int run_cells(const CellsArgs& args, std::ostream& out, std::ostream& err) {
  PoolingInstance inst;
  try {
    inst = load_instance(args.path);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  }
  const ValidationReport rep = validate(inst);
  if (!rep.ok()) return report_invalid(rep, err);

  const PreprocessResult pre = preprocess(inst);
  const PoolingInstance& red = pre.instance;
  const auto hps = build_hyperplanes(red);
  const auto cells = enumerate_cells(
      hps, red.m, red.n, red.q, {.restrict_to_simplex = !args.unrestricted});
  const mpz_class bound = cell_bound(red.m, red.n, red.q);
  const mpz_class buck = buck_bound(red.m, red.n, red.q);
  const bool gp = is_general_position(hps, red.m);

  out << "cells=" << cells.size() << " bound=" << bound.get_str()
      << " buck=" << buck.get_str() << " gp=" << (gp ? "true" : "false") << "\n";
  for (const auto& cell : cells) {
    out << "cell eps=" << cell.eps.str() << " witness=(";
    for (size_t i = 0; i < cell.witness.size(); ++i) {
      if (i) out << ",";
      out << cell.witness[i].str();
    }
    out << ") J=" << SetFormatter{cell.reachable} << "\n";
  }

  if (args.check_bounds &&
      (mpz_class(static_cast<unsigned long>(cells.size())) > bound || bound > buck)) {
    err << "cell-count bound violated\n";
    return kExitDisagree;
  }
  if (args.check_gp && !gp) {
    err << "hyperplane system is not in general position\n";
    return kExitDisagree;
  }
  return kExitOk;
}

int run_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  PoolingInstance inst;
  try {
    inst = generate_instance(args.params);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  } catch (const GenerationError& e) {
    err << e.what() << "\n";
    return kExitGenFailed;
  }
  const std::string text = serialize_instance(inst);
  if (args.out_path.empty()) {
    out << text;
  } else {
    try {
      write_file(args.out_path, text);
    } catch (const std::runtime_error& e) {
      err << e.what() << "\n";
      return kExitInvalid;
    }
  }
  return kExitOk;
}

int run_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<std::array<int, 3>> sizes;
  if (args.sizes.empty()) {
    for (int m : {2, 3, 4}) {
      for (int n : {2, 4, 8}) {
        for (int q : {1, 2, 3}) sizes.push_back({m, n, q});
      }
    }
  } else {
    std::istringstream ss(args.sizes);
    std::string tuple;
    while (std::getline(ss, tuple, ';')) {
      std::array<int, 3> mnq{};
      if (std::sscanf(tuple.c_str(), "%d,%d,%d", &mnq[0], &mnq[1], &mnq[2]) != 3) {
        err << "bad size tuple '" << tuple << "' (expected m,n,q)\n";
        return kExitInvalid;
      }
      sizes.push_back(mnq);
    }
  }

  std::ostringstream csv;
  csv << "m,n,q,cells,lps,pivots,wall_ms\n";
  for (size_t i = 0; i < sizes.size(); ++i) {
    const auto [m, n, q] = sizes[i];
    GenParams gp;
    gp.m = m;
    gp.n = n;
    gp.q = q;
    gp.seed = args.seed + i;
    const PoolingInstance inst = generate_instance(gp);
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const Solution sol =
          solve_pooling(inst, {.mode = args.mode, .max_inputs = args.max_inputs});
      const long wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
      csv << m << "," << n << "," << q << "," << sol.stats.cells << ","
          << sol.stats.lps << "," << sol.stats.pivots << "," << wall_ms << "\n";
    } catch (const GuardError& e) {
      err << e.what() << "\n";
      return kExitGuard;
    }
  }

  if (args.csv_path.empty()) {
    out << csv.str();
  } else {
    try {
      write_file(args.csv_path, csv.str());
    } catch (const std::runtime_error& e) {
      err << e.what() << "\n";
      return kExitInvalid;
    }
  }
  return kExitOk;
}

}  // namespace pooling
