// Acceptance gate: one PASS/FAIL line per criterion. Tolerances and runtime
// limits are pinned below; the process exits non-zero if any criterion fails.

#include "isotuple/classify.hpp"
#include "isotuple/generators.hpp"
#include "isotuple/io.hpp"
#include "isotuple/verify.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace isotuple;

namespace {

constexpr double kGoldenAbs = 1e-12;
constexpr double kInverseRel = 1e-9;
constexpr double kOracleRel = 1e-10;
constexpr double kClauseAbs = 1e-9;
constexpr double kPropResidual = 1e-8;
constexpr double kTheoremRel = 1e-8;
constexpr double kSharpness = 1e-4;
constexpr double kCesaroRatio = 0.5;  // e_1000 <= 5 e_100 / 10

// Campaign tolerance for the theorem criteria: "within 1e-8 * scale".
const Tolerance kTheoremTol(1e-12, kTheoremRel);

const Complex I1{0.0, 1.0};

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      note = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// ---------------------------------------------------------------- 1

Outcome golden_mixing() {
  Outcome o;
  const auto t0 = Clock::now();
  const CMatrix t = mat2(1.0, 1.0, 0.0, 1.0);
  const CMatrix a0 = mat2(0.0, 0.0, 0.0, 1.0);
  const CMatrix u = mat2(0.0, 1.0, I1, 0.0);
  const CMatrix s = u * t;
  const OperatorTuple tt({t}), ts({t.adjoint()}), st({s}), ss({s.adjoint()});
  const CMatrix d2t = triangle(ts, tt, a0, 2);
  o.require(oracle::max_abs(d2t) <= kGoldenAbs, "triangle^2_{T*,T}(A0) = " + fmt(oracle::max_abs(d2t)));
  o.require(oracle::max_abs(oracle::triangle(ts, tt, a0, 2)) <= kGoldenAbs, "oracle triangle^2_{T*,T}");
  const CMatrix sas = s.adjoint() * a0 * s;
  o.require(oracle::max_abs(sas - mat2(1.0, 1.0, 1.0, 1.0)) <= kGoldenAbs, "S*A0S");
  const CMatrix s2 = s * s;
  o.require(oracle::max_abs(s2.adjoint() * a0 * s2 - mat2(1.0, 1.0 - I1, 1.0 + I1, 2.0)) <= kGoldenAbs,
            "S*^2A0S^2");
  const CMatrix want = mat2(-1.0, -1.0 - I1, -1.0 + I1, 1.0);
  const CMatrix d2s = triangle(ss, st, a0, 2);
  o.require(oracle::max_abs(d2s - want) <= kGoldenAbs, "triangle^2_{S*,S}(A0) value");
  o.require(oracle::max_abs(oracle::triangle(ss, st, a0, 2) - want) <= kGoldenAbs,
            "oracle triangle^2_{S*,S}(A0)");
  o.require(fro_norm(d2s) > 1.0, "||triangle^2_{S*,S}(A0)|| <= 1");
  const MixingExample ex = paper_example_mixing();
  o.require(check_ex00(ex.t, ex.a0, ex.u).status == TrialStatus::pass, "check_ex00");
  const double dt = seconds_since(t0);
  o.require(dt < 1.0, "runtime " + fmt(dt) + " s");
  if (o.pass) o.note = "||triangle^2_{S*,S}(A0)|| = " + fmt(fro_norm(d2s)) + ", " + fmt(dt) + " s";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome golden_squares() {
  Outcome o;
  const auto t0 = Clock::now();
  const CMatrix id = identity(2);
  const double r = 1.0 / std::sqrt(2.0);
  const OperatorTuple base({r * id, r * id});
  o.require(fro_norm(triangle(base, base, id, 1)) <= kGoldenAbs, "base triangle^1(I)");
  const OperatorTuple inv = inverse_tuple(base);
  for (unsigned m = 1; m <= 6; ++m) {
    const double want = std::pow(-3.0, m);
    const CMatrix d = triangle(inv, inv, id, m);
    o.require(oracle::max_abs(d - want * id) <= kInverseRel * std::abs(want),
              "inverse triangle^" + std::to_string(m));
    o.require(oracle::max_abs(oracle::triangle(inv, inv, id, m) - want * id) <= kInverseRel * std::abs(want),
              "oracle inverse triangle^" + std::to_string(m));
  }
  const OperatorTuple word = power_tuple(base, 2, PowerConvention::word);
  const OperatorTuple comp = power_tuple(base, 2, PowerConvention::componentwise);
  const double word1 = fro_norm(triangle(word, word, id, 1));
  o.require(word1 <= kGoldenAbs, "word square triangle^1 = " + fmt(word1));
  for (unsigned m = 1; m <= 6; ++m) {
    const double want = std::pow(0.5, m);
    o.require(oracle::max_abs(triangle(comp, comp, id, m) - want * id) <= kGoldenAbs,
              "componentwise triangle^" + std::to_string(m));
  }
  const double dt = seconds_since(t0);
  o.require(dt < 1.0, "runtime " + fmt(dt) + " s");
  if (o.pass) {
    o.note = "word square is 1-isometric; componentwise square has triangle^m(I) = 2^-m I "
             "(the example's non-isometry claim holds only for the componentwise reading)";
  }
  return o;
}

// ---------------------------------------------------------------- 3

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  int instances = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 240; ++seed) {
    oracle::Source src(10'000 + seed);
    const Eigen::Index n = src.integer(1, 4);
    const auto d = static_cast<std::size_t>(src.integer(1, 3));
    const OperatorTuple a = src.commuting(n, d), b = src.commuting(n, d);
    const CMatrix x = src.gaussian(n);
    ++instances;
    for (unsigned m = 0; m <= 4; ++m) {
      for (unsigned k = 0; k <= 4; ++k) {
        const double scale = defect_scale(a, b, x, m, k);
        const double e = oracle::max_abs(isosym_defect(a, b, x, m, k) - oracle::isosym(a, b, x, m, k));
        worst = std::max(worst, e / scale);
        o.require(e <= kOracleRel * scale, "isosym seed " + std::to_string(seed));
      }
      const double st = defect_scale(a, b, x, m);
      const double et = oracle::max_abs(triangle(a, b, x, m) - oracle::triangle(a, b, x, m));
      o.require(et <= kOracleRel * st, "triangle seed " + std::to_string(seed));
      const double sd = defect_scale(a, b, x, 0, m);
      const double ed = oracle::max_abs(delta(a, b, x, m) - oracle::delta(a, b, x, m));
      o.require(ed <= kOracleRel * sd, "delta seed " + std::to_string(seed));
      worst = std::max({worst, et / st, ed / sd});
    }
    for (unsigned j = 0; j <= 5; ++j) {
      const double scale = defect_scale(a, b, x, j);
      const CMatrix it = sigma_power(a, b, x, j, PowerMode::iterate);
      const CMatrix ex = sigma_power(a, b, x, j, PowerMode::expand, Strictness::strict);
      o.require(oracle::max_abs(it - ex) <= kOracleRel * scale, "iterate/expand seed " + std::to_string(seed));
      o.require(oracle::max_abs(it - oracle::sigma_power(a, b, x, j)) <= kOracleRel * scale,
                "sigma oracle seed " + std::to_string(seed));
    }
  }
  const double dt = seconds_since(t0);
  o.require(instances >= 200, "instances");
  o.require(dt < 30.0, "runtime " + fmt(dt) + " s");
  if (o.pass) o.note = std::to_string(instances) + " instances, worst error/scale " + fmt(worst);
  return o;
}

// ---------------------------------------------------------------- 4

Outcome monotonicity() {
  Outcome o;
  int profiled = 0;
  int seeds = 0;
  auto examine = [&](const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                     const std::string& where) {
    const DefectProfile p = defect_profile(a, b, x, 12);
    auto closed = [&](const std::optional<unsigned>& k, const std::vector<double>& norms,
                      const std::vector<double>& thr, const char* kind) {
      if (!k || *k > 6) return;
      ++profiled;
      for (unsigned j = *k; j <= 12; ++j) {
        o.require(norms[j] <= thr[j], where + " " + kind + " degree " + std::to_string(j));
      }
    };
    closed(p.min_isometry_degree, p.triangle_norms, p.triangle_thresholds, "triangle");
    closed(p.min_symmetry_degree, p.delta_norms, p.delta_thresholds, "delta");
    o.require(!p.has_anomalies(), where + " anomaly");
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed, ++seeds) {
    const std::string tag = " seed " + std::to_string(seed);
    const Bundle t5 = random_instance("thm05", seed);
    examine(t5.tuple("A"), t5.tuple("B"), t5.matrix("X"), "thm05 base" + tag);
    examine(sum_tuple(t5.tuple("A"), t5.tuple("N1")), sum_tuple(t5.tuple("B"), t5.tuple("N2")),
            t5.matrix("X"), "thm05 perturbed" + tag);
    const Bundle t6 = random_instance("thm06", seed);
    examine(product_tuple(t6.tuple("S"), t6.tuple("A")), product_tuple(t6.tuple("T"), t6.tuple("B")),
            t6.matrix("X"), "thm06 product" + tag);
    const Bundle c50 = random_instance("cor050", seed);
    const OperatorTuple& t = c50.tuple("T");
    examine(sum_tuple(adjoint_tuple(t), c50.tuple("N")), sum_tuple(t, c50.tuple("N")),
            c50.matrix("X"), "cor050" + tag);
    const Bundle t7 = random_instance("thm07", seed);
    const OperatorTuple as = tensor_tuple(t7.tuple("A"), t7.tuple("S"));
    examine(as, tensor_tuple(t7.tuple("B"), t7.tuple("T")), identity(as.dim()), "thm07" + tag);
  }
  o.require(seeds >= 100, "seeds");
  o.require(profiled >= 100, "only " + std::to_string(profiled) + " profiles with minimal degree <= 6");
  if (o.pass) {
    o.note = std::to_string(profiled) + " pass sets with minimal degree <= 6 over " +
             std::to_string(seeds) + " seeds, upward closed through degree 12, 0 anomalies";
  }
  return o;
}

// ---------------------------------------------------------------- 5

Outcome cesaro() {
  Outcome o;
  const auto t0 = Clock::now();
  const CMatrix j = identity(2) + shift(2);
  const OperatorTuple t({j}), ts({j.adjoint()});
  const auto e = cesaro_estimate(ts, t, identity(2), 3, 1000);
  double e100 = -1.0, e1000 = -1.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k > 0) o.require(e[k].second <= e[k - 1].second * (1.0 + 1e-12), "e_t increases at t=" + std::to_string(e[k].first));
    if (e[k].first == 100) e100 = e[k].second;
    if (e[k].first == 1000) e1000 = e[k].second;
  }
  o.require(e100 > 0.0 && e1000 >= 0.0, "series");
  o.require(e1000 <= kCesaroRatio * e100, "e_1000 = " + fmt(e1000) + " > 0.5 e_100 = " + fmt(e100));

  // Invertible sigma, (X,2)-isometric: a spherical pair with a unitary mixture.
  const CMatrix u = Rng(2024).unitary(3);
  const OperatorTuple a({u / std::sqrt(2.0), I1 * u / std::sqrt(2.0)});
  const OperatorTuple as = adjoint_tuple(a);
  const CMatrix x = identity(3);
  const double cond = condition_number(oracle::sigma_super(as, a));
  o.require(cond < 1e6, "sigma not invertible (cond " + fmt(cond) + ")");
  o.require(fro_norm(oracle::triangle(as, a, x, 2)) <= kClauseAbs, "instance not 2-isometric");
  const double d1 = fro_norm(triangle(as, a, x, 1));
  o.require(d1 <= kClauseAbs, "triangle^1 = " + fmt(d1));
  const TrialResult r = check_pro01(as, a, x, 2);
  o.require(r.status == TrialStatus::pass, "check_pro01: " + r.reason);
  const double dt = seconds_since(t0);
  o.require(dt < 10.0, "runtime " + fmt(dt) + " s");
  if (o.pass) {
    o.note = "e_100 = " + fmt(e100) + ", e_1000 = " + fmt(e1000) + "; invertible 2-isometric triangle^1 = " + fmt(d1);
  }
  return o;
}

// ---------------------------------------------------------------- 6

Outcome props_self_adjoint() {
  Outcome o;
  const CMatrix id_cache = identity(1);
  (void)id_cache;
  int valid4 = 0, valid5 = 0;
  double worst4 = 0.0, worst5 = 0.0;
  for (std::uint64_t seed = 0; seed < 2000 && (valid4 < 100 || valid5 < 100); ++seed) {
    if (valid4 < 100) {
      const Bundle b = random_instance("pro04", seed);
      const OperatorTuple& a = b.tuple("A");
      const OperatorTuple as = adjoint_tuple(a);
      const CMatrix id = identity(a.dim());
      if (is_zero(oracle::delta(as, a, id, 2), Tolerance{}, defect_scale(as, a, id, 0, 2))) {
        ++valid4;
        const CMatrix sum = a.sum();
        const double res = fro_norm(sum - sum.adjoint());
        worst4 = std::max(worst4, res);
        o.require(res <= kPropResidual, "self-adjointness residual " + fmt(res) + " seed " + std::to_string(seed));
      }
    }
    if (valid5 < 100) {
      const Bundle b = random_instance("pro5", seed);
      const OperatorTuple& a = b.tuple("A");
      const unsigned m = static_cast<unsigned>(b.param("m"));
      o.require(m == 2 || m == 4, "pro5 m = " + std::to_string(m));
      const OperatorTuple as = adjoint_tuple(a);
      const CMatrix id = identity(a.dim());
      if (is_zero(oracle::delta(as, a, id, m), Tolerance{}, defect_scale(as, a, id, 0, m))) {
        ++valid5;
        const double scale = defect_scale(as, a, id, 0, m - 1);
        const double res = fro_norm(oracle::delta(as, a, id, m - 1));
        worst5 = std::max(worst5, res / scale);
        o.require(res <= kPropResidual * scale, "delta^{m-1} " + fmt(res) + " seed " + std::to_string(seed));
      }
    }
  }
  o.require(valid4 >= 100 && valid5 >= 100, "valid instances " + std::to_string(valid4) + "/" + std::to_string(valid5));
  for (const char* id : {"pro04", "pro5"}) {
    CampaignConfig c;
    c.theorem_id = id;
    c.trials = 100;
    c.seed = 42;
    const CampaignReport r = run_campaign(c);
    o.require(r.trials >= 100, std::string(id) + " campaign valid trials " + std::to_string(r.trials));
    o.require(r.counterexamples.empty() && r.tolerance_anomalies == 0, std::string(id) + " campaign failures");
  }
  if (o.pass) {
    o.note = std::to_string(valid4) + "+" + std::to_string(valid5) + " valid instances; worst residual " +
             fmt(worst4) + ", worst delta^{m-1}/scale " + fmt(worst5) + "; campaigns 0 counterexamples";
  }
  return o;
}

// ---------------------------------------------------------------- 7

// Nilpotency order by brute force over all words, independent of the library.
unsigned word_order(const OperatorTuple& n) {
  std::vector<CMatrix> words{identity(n.dim())};
  for (unsigned len = 1; len <= static_cast<unsigned>(n.dim()) + 1; ++len) {
    std::vector<CMatrix> next;
    bool all_zero = true;
    for (const auto& w : words) {
      for (const auto& c : n) {
        next.push_back(w * c);
        if (oracle::max_abs(next.back()) > 1e-9) all_zero = false;
      }
    }
    if (all_zero) return len;
    words = std::move(next);
  }
  return 0;
}

Outcome thm_nilpotent() {
  Outcome o;
  const auto t0 = Clock::now();
  CampaignConfig c;
  c.theorem_id = "thm05";
  c.trials = 100;
  c.seed = 42;
  c.tol = kTheoremTol;
  const CampaignReport r = run_campaign(c);
  o.require(r.trials == 100 && r.passes == 100, "campaign passes " + std::to_string(r.passes) + "/" + std::to_string(r.trials));
  double best_witness = 0.0;
  for (const auto& w : r.sharpness_witnesses) best_witness = std::max(best_witness, w.result.sharpness_defect);
  o.require(best_witness > kSharpness, "no sharpness witness above 1e-4");
  // Second route: regenerate bundles and evaluate the conclusion on the superoperator.
  int checked = 0;
  for (std::uint64_t i = 0; checked < 100 && i < 400; ++i) {
    const Bundle b = random_instance("thm05", mix_seed(42, i));
    const unsigned m1 = static_cast<unsigned>(b.param("m1")), m2 = static_cast<unsigned>(b.param("m2"));
    const unsigned n1 = word_order(b.tuple("N1")), n2 = word_order(b.tuple("N2"));
    o.require(m1 <= 2 && m2 <= 2 && n1 <= 3 && n2 <= 3 && b.matrix("X").rows() <= 6, "bundle limits");
    const OperatorTuple ap = sum_tuple(b.tuple("A"), b.tuple("N1"));
    const OperatorTuple bp = sum_tuple(b.tuple("B"), b.tuple("N2"));
    const unsigned t1 = m1 + n1 + n2 - 2, t2 = m2 + n1 + n2 - 2;
    const CMatrix& x = b.matrix("X");
    const double e = fro_norm(oracle::isosym(ap, bp, x, t1, t2));
    o.require(e <= kTheoremRel * defect_scale(ap, bp, x, t1, t2), "oracle conclusion bundle " + std::to_string(i));
    ++checked;
  }
  o.require(checked == 100, "oracle bundles");
  const double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime " + fmt(dt) + " s");
  if (o.pass) {
    o.note = "100/100 pass, " + std::to_string(r.sharpness_witnesses.size()) + " sharpness witnesses (max defect " +
             fmt(best_witness) + "), " + fmt(dt) + " s";
  }
  return o;
}

// ---------------------------------------------------------------- 8

Outcome thm_products() {
  Outcome o;
  const auto t0 = Clock::now();
  std::string summary;
  for (const char* id : {"thm06", "cor06", "cor061", "cor062"}) {
    CampaignConfig c;
    c.theorem_id = id;
    c.trials = 100;
    c.seed = 42;
    c.tol = kTheoremTol;
    const CampaignReport r = run_campaign(c);
    o.require(r.trials == 100 && r.passes == 100, std::string(id) + " passes " + std::to_string(r.passes));
    summary += std::string(id) + " " + std::to_string(r.passes) + "/100 ";
  }
  // Second route for thm06: superoperator evaluation of the product conclusion.
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Bundle b = random_instance("thm06", mix_seed(42, i));
    const unsigned t1 = static_cast<unsigned>(b.param("m") + b.param("r") - 1);
    const unsigned t2 = static_cast<unsigned>(b.param("n") + b.param("s") - 1);
    const OperatorTuple sa = product_tuple(b.tuple("S"), b.tuple("A"));
    const OperatorTuple tb = product_tuple(b.tuple("T"), b.tuple("B"));
    const CMatrix& x = b.matrix("X");
    o.require(fro_norm(oracle::isosym(sa, tb, x, t1, t2)) <= kTheoremRel * defect_scale(sa, tb, x, t1, t2),
              "thm06 oracle bundle " + std::to_string(i));
  }
  // Two Jordan 3-isometric pairs give a 5-isometric product.
  const CMatrix n2 = shift(2);
  const CMatrix t1 = identity(2) + n2, t2 = I1 * identity(2) + n2;
  const OperatorTuple a({t1.adjoint()}), b({t1}), s({t2.adjoint()}), t({t2});
  const CMatrix id = identity(2);
  o.require(fro_norm(oracle::triangle(a, b, id, 3)) <= kGoldenAbs && fro_norm(oracle::triangle(s, t, id, 3)) <= kGoldenAbs,
            "Jordan pairs are not 3-isometric");
  const OperatorTuple sa = product_tuple(s, a), tb = product_tuple(t, b);
  const double d5 = fro_norm(triangle(sa, tb, id, 5));
  o.require(d5 <= kTheoremRel * defect_scale(sa, tb, id, 5), "product triangle^5 = " + fmt(d5));
  o.require(fro_norm(oracle::triangle(sa, tb, id, 5)) <= kTheoremRel * defect_scale(sa, tb, id, 5), "oracle product triangle^5");
  // The same statement through the checker, on commuting embeddings T1 (x) I and I (x) T2.
  const CMatrix e1 = oracle::kron(t1, id), e2 = oracle::kron(id, t2);
  const OperatorTuple ea({e1.adjoint()}), eb({e1}), es({e2.adjoint()}), et({e2});
  const TrialResult cr = check_cor06(ea, eb, es, et, identity(4), 3, 3, IdentityKind::isometric, kTheoremTol);
  o.require(cr.status == TrialStatus::pass, std::string("check_cor06 on embedded Jordan pairs: ") + to_string(cr.status) + " " + cr.reason);
  const double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime " + fmt(dt) + " s");
  if (o.pass) o.note = summary + "; Jordan product triangle^5 = " + fmt(d5) + ", " + fmt(dt) + " s";
  return o;
}

// ---------------------------------------------------------------- 9

Outcome thm_tensor() {
  Outcome o;
  const auto t0 = Clock::now();
  int by_variant[3] = {0, 0, 0};
  CampaignConfig cfg;
  cfg.tol = kTheoremTol;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Bundle b = random_instance("thm07", seed);
    const int v = b.param("variant");
    o.require(b.tuple("A").dim() <= 3 && b.tuple("S").dim() <= 3, "tensor dimensions");
    const TrialResult r = check_bundle("thm07", b, cfg);
    o.require(r.status == TrialStatus::pass, "seed " + std::to_string(seed) + ": " + std::string(to_string(r.status)) + " " + r.reason);
    ++by_variant[v];
    // Second route on the superoperator of the tensor pair.
    const OperatorTuple as = tensor_tuple(b.tuple("A"), b.tuple("S"));
    const OperatorTuple bt = tensor_tuple(b.tuple("B"), b.tuple("T"));
    const CMatrix big = identity(as.dim());
    const unsigned m = static_cast<unsigned>(b.param("m")), n = static_cast<unsigned>(b.param("n"));
    CMatrix got;
    double scale = 0.0;
    if (v == 0) {
      got = oracle::triangle(as, bt, big, m + n - 1);
      scale = defect_scale(as, bt, big, m + n - 1);
    } else if (v == 1) {
      got = oracle::delta(as, bt, big, m + n - 1);
      scale = defect_scale(as, bt, big, 0, m + n - 1);
    } else {
      const unsigned t1 = m + static_cast<unsigned>(b.param("r")) - 1;
      const unsigned t2 = n + static_cast<unsigned>(b.param("s")) - 1;
      got = oracle::isosym(as, bt, big, t1, t2);
      scale = defect_scale(as, bt, big, t1, t2);
    }
    o.require(fro_norm(got) <= kTheoremRel * scale, "oracle seed " + std::to_string(seed));
  }
  o.require(by_variant[0] + by_variant[1] > 0 && by_variant[2] > 0, "both variants exercised");
  o.require(by_variant[0] + by_variant[1] + by_variant[2] >= 50, "seeds");
  const double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime " + fmt(dt) + " s");
  if (o.pass) {
    o.note = "60 seeds: (i) " + std::to_string(by_variant[0] + by_variant[1]) + ", (ii) " +
             std::to_string(by_variant[2]) + ", " + fmt(dt) + " s";
  }
  return o;
}

// ---------------------------------------------------------------- 10

std::string slurp_without_timing(const std::string& path) {
  Json j = read_json_file(path);
  j.erase("timing");
  return j.dump(2);
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  for (const auto& id : campaign_ids()) {
    CampaignConfig c;
    c.theorem_id = id;
    c.trials = 30;
    c.seed = 42;
    const std::string first = report_to_json(run_campaign(c), false).dump();
    const std::string second = report_to_json(run_campaign(c), false).dump();
    o.require(first == second, id + " library reports differ");
  }
  int cli_runs = 0;
  if (!cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / "isotuple_acceptance";
    std::filesystem::create_directories(dir);
    for (const auto& id : campaign_ids()) {
      std::string outs[2];
      for (int k = 0; k < 2; ++k) {
        outs[k] = (dir / (id + "_" + std::to_string(k) + ".json")).string();
        const std::string cmd = "\"" + cli + "\" campaign --theorem " + id + " --seed 42 --out \"" + outs[k] + "\" > /dev/null";
        const int rc = std::system(cmd.c_str());
        o.require(rc != -1 && std::filesystem::exists(outs[k]), id + " CLI run failed");
      }
      if (std::filesystem::exists(outs[0]) && std::filesystem::exists(outs[1])) {
        o.require(slurp_without_timing(outs[0]) == slurp_without_timing(outs[1]), id + " CLI reports differ");
        ++cli_runs;
      }
    }
    std::filesystem::remove_all(dir);
  }
  if (o.pass) {
    o.note = std::to_string(campaign_ids().size()) + " ids identical via library" +
             (cli_runs ? ", " + std::to_string(cli_runs) + " via CLI --seed 42" : std::string());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden mixing example", golden_mixing},
      {"golden squares example", golden_squares},
      {"oracle equivalence", oracle_equivalence},
      {"degree monotonicity", monotonicity},
      {"Cesaro limit and invertible case", cesaro},
      {"self-adjointness propositions", props_self_adjoint},
      {"nilpotent perturbation theorem", thm_nilpotent},
      {"product theorem and corollaries", thm_products},
      {"tensor product theorem", thm_tensor},
      {"campaign determinism", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << "  " << criteria[i].first
              << "  (" << o.note << ")" << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << "\n";
  return failures ? 1 : 0;
}
