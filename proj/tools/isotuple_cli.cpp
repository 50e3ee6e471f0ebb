// isotuple command-line driver.
//
// Exit codes: 0 success, 1 golden or campaign failure, 2 usage or parse
// error, 3 campaign stopped by its budget.

#include "isotuple/classify.hpp"
#include "isotuple/generators.hpp"
#include "isotuple/io.hpp"
#include "isotuple/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifndef ISOTUPLE_GOLDEN_DIR
#define ISOTUPLE_GOLDEN_DIR "tests/golden"
#endif

using namespace isotuple;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// ---------------------------------------------------------------- repro-paper

struct GoldenRow {
  std::string name;
  bool pass = false;
  double error = 0.0;
  double limit = 0.0;
  std::string diff;  // filled on mismatch
};

std::string matrix_text(const CMatrix& m) {
  std::ostringstream os;
  os << std::setprecision(6);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? ", " : "") << m(i, j).real() << (m(i, j).imag() < 0 ? "-" : "+")
         << std::abs(m(i, j).imag()) << "i";
    }
    os << "]\n";
  }
  return os.str();
}

GoldenRow compare(const std::string& name, const CMatrix& got, const CMatrix& want, double limit) {
  GoldenRow row{name, false, 0.0, limit, {}};
  if (got.rows() != want.rows() || got.cols() != want.cols()) {
    row.error = INFINITY;
    row.diff = "  shape mismatch\n";
    return row;
  }
  row.error = (got - want).cwiseAbs().maxCoeff();
  row.pass = row.error <= limit;
  if (!row.pass) row.diff = "  expected\n" + matrix_text(want) + "  computed\n" + matrix_text(got);
  return row;
}

GoldenRow scalar_row(const std::string& name, double got, double want, double limit,
                     bool relative) {
  GoldenRow row{name, false, std::abs(got - want), limit, {}};
  if (relative && want != 0.0) row.error /= std::abs(want);
  row.pass = row.error <= limit;
  if (!row.pass) {
    std::ostringstream os;
    os << "  expected " << want << ", computed " << got << "\n";
    row.diff = os.str();
  }
  return row;
}

// Largest deviation of m from c * I.
double multiple_of_identity_error(const CMatrix& m, double c) {
  return (m - c * identity(m.rows())).cwiseAbs().maxCoeff();
}

std::vector<GoldenRow> golden_mixing(const Json& g) {
  std::vector<GoldenRow> rows;
  const CMatrix t = matrix_from_json(g.at("T"));
  const CMatrix a0 = matrix_from_json(g.at("A0"));
  const CMatrix u = matrix_from_json(g.at("U"));
  const Json& e = g.at("expected");
  // The golden inputs must agree with the built-in example.
  const MixingExample ex = paper_example_mixing();
  rows.push_back(compare("mixing: inputs match built-in T", t, ex.t, 0.0));
  rows.push_back(compare("mixing: inputs match built-in A0", a0, ex.a0, 0.0));
  rows.push_back(compare("mixing: inputs match built-in U", u, ex.u, 0.0));
  const CMatrix s = u * t;
  const OperatorTuple tt({t}), ts({t.adjoint()}), st({s}), ss({s.adjoint()});
  rows.push_back(compare("mixing: S = U T", s, matrix_from_json(e.at("S")), 1e-12));
  rows.push_back(compare("mixing: S* A0 S", s.adjoint() * a0 * s,
                         matrix_from_json(e.at("Sstar_A0_S")), 1e-12));
  const CMatrix s2 = s * s;
  rows.push_back(compare("mixing: S*^2 A0 S^2", s2.adjoint() * a0 * s2,
                         matrix_from_json(e.at("Sstar2_A0_S2")), 1e-12));
  rows.push_back(compare("mixing: triangle^2_{T*,T}(A0) = 0", triangle(ts, tt, a0, 2),
                         matrix_from_json(e.at("triangle2_Tstar_T_A0")), 1e-12));
  const CMatrix d2s = triangle(ss, st, a0, 2);
  rows.push_back(compare("mixing: triangle^2_{S*,S}(A0)", d2s,
                         matrix_from_json(e.at("triangle2_Sstar_S_A0")), 1e-12));
  GoldenRow nz{"mixing: ||triangle^2_{S*,S}(A0)|| > 1", fro_norm(d2s) > 1.0, fro_norm(d2s), 1.0, {}};
  rows.push_back(nz);
  return rows;
}

std::vector<GoldenRow> golden_squares(const Json& g, std::vector<std::string>& notes) {
  std::vector<GoldenRow> rows;
  const OperatorTuple base = tuple_from_json(g.at("base"));
  const OperatorTuple inv_file = tuple_from_json(g.at("inverse"));
  const Json& e = g.at("expected");
  const CMatrix id = identity(base.dim());
  const SquaresExample ex = paper_example_squares();
  rows.push_back(compare("squares: base matches built-in", base[0], ex.a[0], 0.0));
  rows.push_back(scalar_row("squares: base triangle^1(I)", fro_norm(triangle(base, base, id, 1)),
                            e.at("base_triangle1").get<double>(), 1e-12, false));
  const OperatorTuple inv = inverse_tuple(base);
  rows.push_back(compare("squares: inverse tuple", inv[0], inv_file[0], 1e-12));
  for (const auto& [k, want] : e.at("inverse_triangle_multiple").items()) {
    const unsigned m = static_cast<unsigned>(std::stoul(k));
    const CMatrix d = triangle(inv, inv, id, m);
    const double w = want.get<double>();
    rows.push_back(scalar_row("squares: inverse triangle^" + k + "(I) / I", d(0, 0).real(), w, 1e-9, true));
    rows.back().pass = rows.back().pass && multiple_of_identity_error(d, d(0, 0).real()) <= 1e-9 * std::abs(w);
  }
  const OperatorTuple word = power_tuple(base, 2, PowerConvention::word);
  const OperatorTuple comp = power_tuple(base, 2, PowerConvention::componentwise);
  rows.push_back(scalar_row("squares: word square triangle^1(I)", fro_norm(triangle(word, word, id, 1)),
                            e.at("word_square_triangle1").get<double>(), 1e-12, false));
  for (const auto& [k, want] : e.at("componentwise_square_triangle_multiple").items()) {
    const unsigned m = static_cast<unsigned>(std::stoul(k));
    const CMatrix d = triangle(comp, comp, id, m);
    const double w = want.get<double>();
    rows.push_back(scalar_row("squares: componentwise triangle^" + k + "(I) / I", d(0, 0).real(), w,
                              1e-12, true));
    rows.back().pass = rows.back().pass && multiple_of_identity_error(d, w) <= 1e-12;
  }
  notes.push_back(
      "squares: with the word convention (A1^2, A1A2, A2A1, A2^2) the squared pair is "
      "1-isometric; the componentwise square (A1^2, A2^2) "
      "gives triangle^m(I) = 2^-m I and is not m-isometric for any m.");
  return rows;
}

int cmd_repro(const std::string& golden_dir, bool json_out) {
  std::vector<GoldenRow> rows;
  std::vector<std::string> notes;
  try {
    auto mixing = golden_mixing(read_json_file(golden_dir + "/example_mixing.json"));
    auto squares = golden_squares(read_json_file(golden_dir + "/example_squares.json"), notes);
    rows.insert(rows.end(), mixing.begin(), mixing.end());
    rows.insert(rows.end(), squares.begin(), squares.end());
  } catch (const ParseError& e) {
    std::cerr << "repro-paper: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "repro-paper: malformed golden file: " << e.what() << "\n";
    return kExitUsage;
  }
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  if (json_out) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"name", r.name}, {"pass", r.pass}, {"error", r.error}, {"limit", r.limit}});
    }
    std::cout << Json{{"schema_version", 1}, {"pass", all}, {"checks", arr}, {"notes", notes}}.dump(2)
              << "\n";
  } else {
    for (const auto& r : rows) {
      std::cout << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(48) << r.name
                << " err=" << std::scientific << std::setprecision(2) << r.error << "\n"
                << std::defaultfloat;
      if (!r.pass) std::cout << r.diff;
    }
    for (const auto& n : notes) std::cout << "note: " << n << "\n";
    std::cout << (all ? "all golden checks passed" : "golden mismatch") << "\n";
  }
  return all ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- check / min-degree

struct PairInput {
  OperatorTuple a;
  OperatorTuple b;
  CMatrix x;
};

PairInput load_pair(const std::string& fa, const std::string& fb, const std::string& fx) {
  OperatorTuple a = tuple_from_json(read_json_file(fa));
  OperatorTuple b = tuple_from_json(read_json_file(fb));
  CMatrix x = fx.empty() ? identity(a.dim()) : matrix_from_json(read_json_file(fx));
  require_conformable(a, b, x, "input");
  return {std::move(a), std::move(b), std::move(x)};
}

std::string degree_text(const std::optional<unsigned>& d, unsigned k_max) {
  return d ? std::to_string(*d) : "none \xe2\x89\xa4 " + std::to_string(k_max);
}

int cmd_check(const PairInput& in, unsigned m, unsigned n, unsigned k_max, const Tolerance& tol,
              bool json_out) {
  const auto p = defect_profile(in.a, in.b, in.x, k_max, tol);
  const bool iso = is_isometric(in.a, in.b, in.x, m, tol);
  const bool sym = is_symmetric(in.a, in.b, in.x, n, tol);
  const bool isosym = is_isosymmetric(in.a, in.b, in.x, m, n, tol);
  if (json_out) {
    Json j{{"schema_version", 1},
           {"m", m},
           {"n", n},
           {"isometric", iso},
           {"symmetric", sym},
           {"isosymmetric", isosym},
           {"profile", profile_to_json(p)}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << " k   ||triangle^k||   ||delta^k||\n";
  for (unsigned k = 0; k <= k_max; ++k) {
    std::cout << std::setw(2) << k << "   " << std::scientific << std::setprecision(4)
              << p.triangle_norms[k] << "     " << p.delta_norms[k] << "\n";
  }
  std::cout << std::defaultfloat << std::boolalpha;
  std::cout << "isometric at m=" << m << ": " << iso << "\n";
  std::cout << "symmetric at n=" << n << ": " << sym << "\n";
  std::cout << "isosymmetric at (m,n)=(" << m << "," << n << "): " << isosym << "\n";
  std::cout << "minimal isometry degree: " << degree_text(p.min_isometry_degree, k_max) << "\n";
  std::cout << "minimal symmetry degree: " << degree_text(p.min_symmetry_degree, k_max) << "\n";
  if (p.has_anomalies()) std::cout << "warning: non-monotone pass set (tolerance anomaly)\n";
  return kExitOk;
}

int cmd_min_degree(const PairInput& in, unsigned k_max, const Tolerance& tol, bool json_out) {
  const auto p = defect_profile(in.a, in.b, in.x, k_max, tol);
  if (json_out) {
    auto val = [](const std::optional<unsigned>& d) { return d ? Json(*d) : Json(nullptr); };
    std::cout << Json{{"k_max", k_max},
                      {"symmetry", val(p.min_symmetry_degree)},
                      {"isometry", val(p.min_isometry_degree)}}
                     .dump()
              << "\n";
    return kExitOk;
  }
  std::cout << "symmetry: " << degree_text(p.min_symmetry_degree, k_max)
            << ", isometry: " << degree_text(p.min_isometry_degree, k_max) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- campaign

struct CampaignFlags {
  std::string theorem;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  double budget = 0.0;
  unsigned threads = 0;
  double tol_abs = Tolerance{}.abs_eps;
  double tol_rel = Tolerance{}.rel_eps;
  std::string out;
  std::string csv;
};

// Config keys mirror the long flag names.
void apply_config(const Json& cfg, CampaignFlags& f, const CLI::App& sub) {
  auto set = [&](const char* key, const char* flag, auto& field) {
    if (cfg.contains(key) && sub.count(flag) == 0) {
      field = cfg.at(key).get<std::remove_reference_t<decltype(field)>>();
    }
  };
  set("theorem", "--theorem", f.theorem);
  set("trials", "--trials", f.trials);
  set("seed", "--seed", f.seed);
  set("budget", "--budget", f.budget);
  set("threads", "--threads", f.threads);
  set("tol_abs", "--tol-abs", f.tol_abs);
  set("tol", "--tol", f.tol_rel);
  set("out", "--out", f.out);
  set("csv", "--csv", f.csv);
}

int cmd_campaign(const CampaignFlags& f, bool json_out) {
  const auto& ids = campaign_ids();
  if (std::find(ids.begin(), ids.end(), f.theorem) == ids.end()) {
    std::cerr << "campaign: unknown theorem id '" << f.theorem << "'; known:";
    for (const auto& id : ids) std::cerr << " " << id;
    std::cerr << "\n";
    return kExitUsage;
  }
  CampaignConfig c;
  c.theorem_id = f.theorem;
  c.trials = f.trials;
  c.seed = f.seed;
  c.budget_seconds = f.budget;
  c.threads = f.threads;
  c.tol = Tolerance(f.tol_abs, f.tol_rel);
  const CampaignReport r = run_campaign(c);
  const Json j = report_to_json(r);
  if (!f.out.empty()) write_text_file(f.out, j.dump(2) + "\n");
  if (!f.csv.empty()) write_text_file(f.csv, report_csv_header() + report_csv_row(r));
  if (json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "theorem       " << r.theorem_id << "\n"
              << "seed          " << r.seed << "\n"
              << "trials        " << r.trials << " (requested " << r.requested_trials << ")\n"
              << "passes        " << r.passes << "\n"
              << "anomalies     " << r.tolerance_anomalies << "\n"
              << "counterex.    " << r.counterexamples.size() << "\n"
              << "skipped       " << r.skipped << "\n"
              << "sharpness     " << r.sharpness_witnesses.size() << "\n"
              << "max ratio     " << r.max_defect_ratio << "\n";
    for (const auto& cx : r.counterexamples) {
      std::cout << "  counterexample trial " << cx.index << " seed " << cx.seed << ": "
                << cx.result.reason << "\n";
    }
    if (r.budget_exceeded) std::cout << "budget exceeded: partial report\n";
  }
  if (r.budget_exceeded) return kExitBudget;
  return r.counterexamples.empty() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for isometric and symmetric defects of operator tuples"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "Machine-readable output");

  std::string golden_dir = ISOTUPLE_GOLDEN_DIR;
  auto* repro = app.add_subcommand("repro-paper", "Reproduce the worked examples against golden files");
  repro->add_option("--golden", golden_dir, "Directory holding the golden JSON files");
  repro->add_flag("--json", json_out, "Machine-readable output");

  std::string fa, fb, fx;
  unsigned m = 1, n = 1, k_max = kDefaultKMax;
  double tol_abs = Tolerance{}.abs_eps, tol_rel = Tolerance{}.rel_eps;
  auto* check = app.add_subcommand("check", "Defect profile and verdicts for a pair (A, B) at X");
  auto* mindeg = app.add_subcommand("min-degree", "Minimal isometry and symmetry degrees");
  for (auto* sub : {check, mindeg}) {
    sub->add_option("--tuple-a", fa, "Tuple A (JSON)")->required();
    sub->add_option("--tuple-b", fb, "Tuple B (JSON)")->required();
    sub->add_option("--x", fx, "Matrix X (JSON); identity when omitted");
    sub->add_option("--k-max", k_max, "Largest degree profiled")->check(CLI::Range(1u, 64u));
    sub->add_option("--tol-abs", tol_abs, "Absolute tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", tol_rel, "Relative tolerance")->check(CLI::NonNegativeNumber);
    sub->add_flag("--json", json_out, "Machine-readable output");
  }
  check->add_option("--m", m, "Isometric degree");
  check->add_option("--n", n, "Symmetric degree");

  CampaignFlags cf;
  std::string config_file;
  auto* camp = app.add_subcommand("campaign", "Randomized theorem campaign");
  camp->add_option("--theorem", cf.theorem, "Theorem id");
  camp->add_option("--trials", cf.trials, "Hypothesis-valid trials to run");
  camp->add_option("--seed", cf.seed, "Campaign seed");
  camp->add_option("--budget", cf.budget, "Wall-clock budget in seconds (0: none)")
      ->check(CLI::NonNegativeNumber);
  camp->add_option("--threads", cf.threads, "Worker threads (0: ISOTUPLE_THREADS or all cores)");
  camp->add_option("--tol-abs", cf.tol_abs, "Absolute tolerance")->check(CLI::NonNegativeNumber);
  camp->add_option("--tol", cf.tol_rel, "Relative tolerance")->check(CLI::NonNegativeNumber);
  camp->add_option("--out", cf.out, "Write the JSON report here");
  camp->add_option("--csv", cf.csv, "Write the CSV summary here");
  camp->add_option("--config", config_file, "JSON config; flags override its keys");
  camp->add_flag("--json", json_out, "Print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*repro) return cmd_repro(golden_dir, json_out);
    if (*check || *mindeg) {
      const PairInput in = load_pair(fa, fb, fx);
      const Tolerance tol(tol_abs, tol_rel);
      if (*check) return cmd_check(in, m, n, k_max, tol, json_out);
      return cmd_min_degree(in, k_max, tol, json_out);
    }
    if (*camp) {
      if (!config_file.empty()) apply_config(read_json_file(config_file), cf, *camp);
      if (cf.theorem.empty()) {
        std::cerr << "campaign: --theorem is required\n";
        return kExitUsage;
      }
      return cmd_campaign(cf, json_out);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
