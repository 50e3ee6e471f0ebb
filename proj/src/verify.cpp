#include "isotuple/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace isotuple {

const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::pass: return "pass";
    case TrialStatus::counterexample: return "counterexample";
    case TrialStatus::skipped: return "skipped";
    case TrialStatus::anomaly: return "anomaly";
  }
  return "unknown";
}

namespace {

// Accumulates hypothesis checks and conclusions of one trial.
class Trial {
 public:
  explicit Trial(const Tolerance& tol) : tol_(tol) {}

  /// Records a hypothesis; false once any hypothesis has failed.
  bool require(const std::string& name, const CMatrix& defect, double scale) {
    const double norm = fro_norm(defect);
    result_.details["hyp:" + name] = norm;
    if (skipped_) return false;
    if (!is_zero(defect, tol_, scale)) {
      skip(name + " = " + format(norm) + " exceeds " + format(tol_.threshold(scale)));
    }
    return !skipped_;
  }

  bool require_commuting(const std::string& name, const OperatorTuple& s, const OperatorTuple& t) {
    bool ok = true;
    double worst = 0.0;
    for (const auto& a : s) {
      for (const auto& b : t) {
        const CMatrix c = a * b - b * a;
        worst = std::max(worst, fro_norm(c));
        ok = ok && is_zero(c, tol_, fro_norm(a) * fro_norm(b));
      }
    }
    result_.details["comm:" + name] = worst;
    if (!ok && !skipped_) skip("[" + name + "] = " + format(worst));
    return !skipped_;
  }

  void skip(const std::string& why) {
    if (skipped_) return;
    skipped_ = true;
    result_.status = TrialStatus::skipped;
    result_.reason = why;
  }

  bool skipped() const { return skipped_; }

  /// Records a conclusion that must vanish; `slack` widens the threshold.
  bool conclude(const std::string& name, const CMatrix& defect, double scale, double slack = 0.0) {
    const double norm = fro_norm(defect);
    const double thr = tol_.threshold(scale) + slack;
    result_.details["concl:" + name] = norm;
    const double ratio = norm / thr;
    if (!have_conclusion_ || ratio > result_.ratio()) {
      result_.defect = norm;
      result_.threshold = thr;
      have_conclusion_ = true;
    }
    if (norm <= thr) return true;
    const TrialStatus s =
        norm <= kAnomalyFactor * thr ? TrialStatus::anomaly : TrialStatus::counterexample;
    const bool upgrade = result_.status == TrialStatus::pass ||
                         (result_.status == TrialStatus::anomaly && s == TrialStatus::counterexample);
    if (upgrade) {
      result_.status = s;
      result_.reason = name + " = " + format(norm) + " exceeds " + format(thr);
    }
    return false;
  }

  /// A two-sided statement "lhs vanishes iff rhs vanishes".
  void biconditional(const std::string& name, const CMatrix& lhs, double lhs_scale,
                     const CMatrix& rhs, double rhs_scale) {
    const double ln = fro_norm(lhs), rn = fro_norm(rhs);
    const double lt = tol_.threshold(lhs_scale), rt = tol_.threshold(rhs_scale);
    result_.details["lhs:" + name] = ln;
    result_.details["rhs:" + name] = rn;
    const bool lz = ln <= lt, rz = rn <= rt;
    result_.details["lhs_zero:" + name] = lz;
    result_.details["rhs_zero:" + name] = rz;
    if (lz == rz) return;
    const double nonzero_ratio = lz ? rn / rt : ln / lt;
    result_.defect = lz ? rn : ln;
    result_.threshold = lz ? rt : lt;
    result_.status = nonzero_ratio <= kAnomalyFactor ? TrialStatus::anomaly
                                                     : TrialStatus::counterexample;
    result_.reason = name + ": lhs " + (lz ? "vanishes" : "nonzero") + ", rhs " +
                     (rz ? "vanishes" : "nonzero");
  }

  bool nonzero(const CMatrix& m, double scale) const { return !is_zero(m, tol_, scale); }

  TrialResult& result() { return result_; }
  const Tolerance& tol() const { return tol_; }

  static std::string format(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
  }

 private:
  Tolerance tol_;
  TrialResult result_;
  bool skipped_ = false;
  bool have_conclusion_ = false;
};

double scale_iso(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned m) {
  return defect_scale(a, b, x, m);
}

double scale_sym(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned n) {
  return defect_scale(a, b, x, 0, n);
}

// Isometric (or symmetric) defect of one pair at degree k.
CMatrix single_defect(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned k,
                      bool isometric) {
  return isometric ? triangle(a, b, x, k) : delta(a, b, x, k);
}

double single_scale(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned k,
                    bool isometric) {
  return isometric ? scale_iso(a, b, x, k) : scale_sym(a, b, x, k);
}

// Sharpness and empirical degree for a single identity with bound `t`.
void probe_single(Trial& trial, const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                  unsigned t, bool isometric) {
  auto& r = trial.result();
  r.bound = t;
  const auto all = isometric ? triangle_all(a, b, x, t) : delta_all(a, b, x, t);
  for (unsigned k = 1; k <= t; ++k) {
    if (!trial.nonzero(all[k], single_scale(a, b, x, k, isometric))) {
      r.empirical_min_degree = k;
      break;
    }
  }
  if (t >= 2) {
    r.sharpness_defect = fro_norm(all[t - 1]);
    r.sharpness_witness = trial.nonzero(all[t - 1], single_scale(a, b, x, t - 1, isometric));
  }
}

// Sharpness and empirical degree for isosym_defect with bound (t1, t2).
void probe_isosym(Trial& trial, const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                  unsigned t1, unsigned t2) {
  auto& r = trial.result();
  r.bound = t1;
  const CMatrix inner = delta(a, b, x, t2);
  const auto tri = triangle_all(a, b, inner, t1);
  for (unsigned k = 1; k <= t1; ++k) {
    if (!trial.nonzero(tri[k], defect_scale(a, b, x, k, t2))) {
      r.empirical_min_degree = k;
      break;
    }
  }
  double witness = 0.0;
  bool sharp = false;
  if (t1 >= 2) {
    witness = fro_norm(tri[t1 - 1]);
    sharp = trial.nonzero(tri[t1 - 1], defect_scale(a, b, x, t1 - 1, t2));
  }
  if (t2 >= 2) {
    const CMatrix lower = isosym_defect(a, b, x, t1, t2 - 1);
    r.details["sharpness_t2"] = fro_norm(lower);
    sharp = sharp || trial.nonzero(lower, defect_scale(a, b, x, t1, t2 - 1));
  }
  r.details["sharpness_t1"] = witness;
  r.sharpness_defect = witness;
  r.sharpness_witness = sharp;
}

// Post-mortem series for failed trials.
void attach_profile(TrialResult& r, const OperatorTuple& a, const OperatorTuple& b,
                    const CMatrix& x) {
  if (r.status != TrialStatus::counterexample && r.status != TrialStatus::anomaly) return;
  const auto p = defect_profile(a, b, x, kDefaultKMax);
  r.defect_norms = p.triangle_norms;
  r.defect_norms.insert(r.defect_norms.end(), p.delta_norms.begin(), p.delta_norms.end());
}

double op_sum(const OperatorTuple& t) {
  double s = 0.0;
  for (const auto& c : t) s += op_norm_estimate(c);
  return s;
}

}  // namespace

// --------------------------------------------------------------------------
// Single-tuple statements

TrialResult check_pro01(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                        unsigned m, unsigned t_max, const Tolerance& tol) {
  require_conformable(a, b, x, "check_pro01");
  if (m == 0) throw std::invalid_argument("check_pro01: m must be >= 1");
  if (t_max < m) throw std::invalid_argument("check_pro01: t_max must be >= m");
  Trial trial(tol);
  if (!trial.require("triangle^m", triangle(a, b, x, m), scale_iso(a, b, x, m))) {
    return trial.result();
  }
  auto& r = trial.result();
  r.bound = m;
  const auto lower = triangle_all(a, b, x, m - 1);
  double c = 0.0;
  for (const auto& d : lower) c = std::max(c, fro_norm(d));
  c *= 5.0;
  const auto series = cesaro_estimate(a, b, x, m, t_max, tol);
  const double e_last = series.back().second;
  r.details["cesaro_error"] = e_last;
  r.details["cesaro_constant"] = c;
  // Deviation from the limit written without the (-1)^{m-1} sign.
  const CMatrix sig_t = sigma_power(a, b, x, t_max);
  r.details["unsigned_limit_error"] =
      fro_norm(sig_t / binomial_real(t_max, m - 1) - lower.back());
  const double band = c * (m - 1) / static_cast<double>(t_max);
  trial.conclude("cesaro_error", CMatrix::Constant(1, 1, e_last), 0.0,
                 band + tol.threshold(scale_iso(a, b, x, m)));
  const double cond = condition_number(superop_matrix(a, b, SuperopKind::sigma));
  r.details["sigma_condition"] = cond;
  const bool invertible = cond <= 1e12;
  r.details["sigma_invertible"] = invertible;
  if (invertible && m >= 2) {
    trial.conclude("invertibility_clause", lower.back(), scale_iso(a, b, x, m - 1));
  }
  r.empirical_min_degree = defect_profile(a, b, x, m, tol).min_isometry_degree;
  attach_profile(r, a, b, x);
  return r;
}

TrialResult check_pro04(const OperatorTuple& a, const Tolerance& tol) {
  const OperatorTuple as = adjoint_tuple(a);
  const CMatrix id = identity(a.dim());
  Trial trial(tol);
  if (!trial.require("delta^2(I)", delta(as, a, id, 2), scale_sym(as, a, id, 2))) {
    return trial.result();
  }
  const CMatrix sum = a.sum();
  trial.conclude("self_adjoint", sum - sum.adjoint(), scale_sym(as, a, id, 1));
  return trial.result();
}

TrialResult check_pro5(const OperatorTuple& a, unsigned m, const Tolerance& tol) {
  if (m == 0 || m % 2) throw std::invalid_argument("check_pro5: m must be a positive even integer");
  const OperatorTuple as = adjoint_tuple(a);
  const CMatrix id = identity(a.dim());
  Trial trial(tol);
  if (!trial.require("delta^m(I)", delta(as, a, id, m), scale_sym(as, a, id, m))) {
    return trial.result();
  }
  trial.result().bound = m - 1;
  trial.conclude("delta^{m-1}(I)", delta(as, a, id, m - 1), scale_sym(as, a, id, m - 1));
  probe_single(trial, as, a, id, m - 1, false);
  return trial.result();
}

std::vector<double> convergence_residuals(const ConvergentFamily& f) {
  if (f.a_members.size() != f.b_members.size()) {
    throw std::invalid_argument("convergence_residuals: member lists differ in length");
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < f.a_members.size(); ++k) {
    const auto& ak = f.a_members[k];
    const auto& bk = f.b_members[k];
    if (ak.size() != f.a_limit.size() || bk.size() != f.b_limit.size() ||
        ak.dim() != f.a_limit.dim() || bk.dim() != f.b_limit.dim()) {
      throw std::invalid_argument("convergence_residuals: member shape differs from the limit");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < ak.size(); ++i) {
      worst = std::max(worst, op_norm_estimate(ak[i] - f.a_limit[i]) +
                                  op_norm_estimate(bk[i] - f.b_limit[i]));
    }
    out.push_back(worst);
  }
  return out;
}

namespace {

constexpr double kConvergenceLimit = 1e-3;

// sup-norm bound on ||sigma'^j - sigma^j|| summed through the binomial expansion.
double triangle_slack(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& ak,
                      const OperatorTuple& bk, const CMatrix& x, unsigned m) {
  double eps = 0.0;
  double rho = 0.0;
  double rho_k = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double na = op_norm_estimate(a[i]), nb = op_norm_estimate(b[i]);
    const double nak = op_norm_estimate(ak[i]), nbk = op_norm_estimate(bk[i]);
    eps += op_norm_estimate(a[i] - ak[i]) * nbk + na * op_norm_estimate(b[i] - bk[i]);
    rho += na * nb;
    rho_k += nak * nbk;
  }
  const double big = std::max(rho, rho_k);
  double s = 0.0;
  for (unsigned j = 1; j <= m; ++j) s += binomial_real(m, j) * j * std::pow(big, j - 1) * eps;
  return s * fro_norm(x);
}

double delta_slack(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& ak,
                   const OperatorTuple& bk, const CMatrix& x, unsigned n) {
  const double eps = op_norm_estimate(a.sum() - ak.sum()) + op_norm_estimate(b.sum() - bk.sum());
  const double big = std::max(op_sum(a) + op_sum(b), op_sum(ak) + op_sum(bk));
  return n * std::pow(big, n - 1) * eps * fro_norm(x);
}

}  // namespace

TrialResult check_pro02(const ConvergentFamily& f, const Tolerance& tol) {
  if (f.a_members.empty()) throw std::invalid_argument("check_pro02: empty family");
  require_conformable(f.a_limit, f.b_limit, f.x, "check_pro02");
  const auto res = convergence_residuals(f);
  if (!(res.back() <= kConvergenceLimit) || (res.size() > 1 && !(res.back() < res.front()))) {
    std::ostringstream os;
    os << "check_pro02: family does not converge (last residual " << res.back() << ")";
    throw std::invalid_argument(os.str());
  }
  const bool iso = f.kind != IdentityKind::symmetric;
  const bool sym = f.kind != IdentityKind::isometric;
  Trial trial(tol);
  auto& r = trial.result();
  r.details["final_residual"] = res.back();
  for (std::size_t k = 0; k < f.a_members.size(); ++k) {
    const auto& ak = f.a_members[k];
    const auto& bk = f.b_members[k];
    const std::string tag = "member " + std::to_string(k);
    if (iso && !trial.require(tag + " triangle^m1", triangle(ak, bk, f.x, f.m1),
                              scale_iso(ak, bk, f.x, f.m1))) {
      return r;
    }
    if (sym && !trial.require(tag + " delta^m2", delta(ak, bk, f.x, f.m2),
                              scale_sym(ak, bk, f.x, f.m2))) {
      return r;
    }
  }
  const auto& a = f.a_limit;
  const auto& b = f.b_limit;
  const auto& ak = f.a_members.back();
  const auto& bk = f.b_members.back();
  // The limit inherits the identity up to the perturbation it has not yet absorbed.
  double outer = 1.0;
  if (iso) {
    const double slack = triangle_slack(a, b, ak, bk, f.x, f.m1) +
                         fro_norm(triangle(ak, bk, f.x, f.m1));
    r.details["slack_triangle"] = slack;
    trial.conclude("limit triangle^m1", triangle(a, b, f.x, f.m1), scale_iso(a, b, f.x, f.m1),
                   slack);
    outer = std::max(outer, slack * std::pow(op_sum(a) + op_sum(b), f.m2));
  }
  if (sym) {
    const double slack =
        delta_slack(a, b, ak, bk, f.x, f.m2) + fro_norm(delta(ak, bk, f.x, f.m2));
    r.details["slack_delta"] = slack;
    trial.conclude("limit delta^m2", delta(a, b, f.x, f.m2), scale_sym(a, b, f.x, f.m2), slack);
    double rho = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) rho += op_norm_estimate(a[i]) * op_norm_estimate(b[i]);
    outer = std::max(outer, slack * std::pow(1.0 + rho, f.m1));
  }
  trial.conclude("limit isosym", isosym_defect(a, b, f.x, f.m1, f.m2),
                 defect_scale(a, b, f.x, f.m1, f.m2), outer == 1.0 ? 0.0 : outer);
  attach_profile(r, a, b, f.x);
  return r;
}

TrialResult check_pro03(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                        unsigned m, Pro03Part part, const Tolerance& tol) {
  require_conformable(a, b, x, "check_pro03");
  const std::size_t d = a.size();
  if (d < 2) throw std::invalid_argument("check_pro03: needs d >= 2");
  Trial trial(tol);
  if (!trial.require_commuting("A", a, a) || !trial.require_commuting("B", b, b)) {
    return trial.result();
  }
  const bool iso = part == Pro03Part::isometric;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const OperatorTuple ai({a[i]}), bi({b[i]});
    if (!trial.require("pair " + std::to_string(i + 1), single_defect(ai, bi, x, 1, iso),
                       single_scale(ai, bi, x, 1, iso))) {
      return trial.result();
    }
  }
  const CMatrix& ad = a[d - 1];
  const CMatrix& bd = b[d - 1];
  const OperatorTuple adt({ad}), bdt({bd});
  if (iso) {
    // ((d-2) I + L_{A_d} R_{B_d})^m (X) by the binomial sum.
    const double c = static_cast<double>(d) - 2.0;
    CMatrix rhs = zero(x.rows());
    CMatrix term = x;
    for (unsigned j = 0; j <= m; ++j) {
      if (j > 0) term = ad * term * bd;
      rhs += binomial_real(m, j) * std::pow(c, m - j) * term;
    }
    const double rhs_scale =
        fro_norm(x) * std::pow(std::abs(c) + op_norm_estimate(ad) * op_norm_estimate(bd), m);
    trial.biconditional("triangle^m <=> ((d-2)+L R)^m", triangle(a, b, x, m),
                        scale_iso(a, b, x, m), rhs, rhs_scale);
  } else {
    trial.biconditional("delta^m <=> delta^m_{A_d,B_d}", delta(a, b, x, m), scale_sym(a, b, x, m),
                        delta(adt, bdt, x, m), scale_sym(adt, bdt, x, m));
  }
  return trial.result();
}

// --------------------------------------------------------------------------
// Nilpotent perturbation family

namespace {

struct NilOrders {
  unsigned n1 = 0;
  unsigned n2 = 0;
};

std::optional<NilOrders> nil_orders(Trial& trial, const OperatorTuple& n1, const OperatorTuple& n2) {
  const auto o1 = nilpotency_order(n1, static_cast<unsigned>(n1.dim()), trial.tol(), Strictness::lax);
  const auto o2 = nilpotency_order(n2, static_cast<unsigned>(n2.dim()), trial.tol(), Strictness::lax);
  if (!o1 || !o2) {
    trial.skip("perturbation tuple is not nilpotent");
    return std::nullopt;
  }
  trial.result().details["n1"] = *o1;
  trial.result().details["n2"] = *o2;
  return NilOrders{*o1, *o2};
}

}  // namespace

TrialResult check_thm05(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& n1,
                        const OperatorTuple& n2, const CMatrix& x, unsigned m1, unsigned m2,
                        const Tolerance& tol) {
  require_conformable(a, b, x, "check_thm05");
  require_conformable(n1, n2, x, "check_thm05");
  if (m1 == 0 || m2 == 0) throw std::invalid_argument("check_thm05: m1, m2 must be >= 1");
  Trial trial(tol);
  const bool ok = trial.require_commuting("A", a, a) && trial.require_commuting("B", b, b) &&
                  trial.require_commuting("N1", n1, n1) && trial.require_commuting("N2", n2, n2) &&
                  trial.require_commuting("A,N1", a, n1) && trial.require_commuting("B,N2", b, n2) &&
                  trial.require("isosym(m1,m2)", isosym_defect(a, b, x, m1, m2),
                                defect_scale(a, b, x, m1, m2));
  if (!ok) return trial.result();
  const auto orders = nil_orders(trial, n1, n2);
  if (!orders) return trial.result();
  const unsigned t1 = m1 + orders->n1 + orders->n2 - 2;
  const unsigned t2 = m2 + orders->n1 + orders->n2 - 2;
  const OperatorTuple ap = sum_tuple(a, n1);
  const OperatorTuple bp = sum_tuple(b, n2);
  trial.result().details["t1"] = t1;
  trial.result().details["t2"] = t2;
  trial.conclude("isosym(t1,t2)", isosym_defect(ap, bp, x, t1, t2), defect_scale(ap, bp, x, t1, t2));
  probe_isosym(trial, ap, bp, x, t1, t2);
  attach_profile(trial.result(), ap, bp, x);
  return trial.result();
}

TrialResult check_cor05(const Cor05Input& in, const Tolerance& tol) {
  const auto& x = in.x;
  require_conformable(in.a1, in.b1, x, "check_cor05");
  require_conformable(in.a2, in.b2, x, "check_cor05");
  require_conformable(in.n1, in.n2, x, "check_cor05");
  Trial trial(tol);
  const bool ok = trial.require_commuting("A1", in.a1, in.a1) &&
                  trial.require_commuting("A2", in.a2, in.a2) &&
                  trial.require_commuting("B1", in.b1, in.b1) &&
                  trial.require_commuting("B2", in.b2, in.b2) &&
                  trial.require_commuting("N1", in.n1, in.n1) &&
                  trial.require_commuting("N2", in.n2, in.n2) &&
                  trial.require_commuting("A1,N1", in.a1, in.n1) &&
                  trial.require_commuting("A2,N1", in.a2, in.n1) &&
                  trial.require_commuting("B1,N2", in.b1, in.n2) &&
                  trial.require_commuting("B2,N2", in.b2, in.n2) &&
                  trial.require_commuting("A1,A2", in.a1, in.a2) &&
                  trial.require_commuting("B1,B2", in.b1, in.b2);
  if (!ok) return trial.result();
  const auto orders = nil_orders(trial, in.n1, in.n2);
  if (!orders) return trial.result();
  const unsigned shift_deg = orders->n1 + orders->n2 - 2;
  const unsigned t1 = in.m1 + shift_deg, t2 = in.m2 + shift_deg;
  const OperatorTuple a1p = sum_tuple(in.a1, in.n1), b1p = sum_tuple(in.b1, in.n2);
  const OperatorTuple a2p = sum_tuple(in.a2, in.n1), b2p = sum_tuple(in.b2, in.n2);
  auto& r = trial.result();
  int used = 0;
  if (is_isometric(in.a1, in.b1, x, in.m1, tol)) {
    ++used;
    trial.conclude("triangle^t1", triangle(a1p, b1p, x, t1), scale_iso(a1p, b1p, x, t1));
    probe_single(trial, a1p, b1p, x, t1, true);
  }
  if (is_symmetric(in.a2, in.b2, x, in.m2, tol)) {
    ++used;
    trial.conclude("delta^t2", delta(a2p, b2p, x, t2), scale_sym(a2p, b2p, x, t2));
  }
  const double mixed_scale = scale_iso(in.a1, in.b1, x, in.m1) * scale_sym(in.a2, in.b2, x, in.m2) /
                             std::max(fro_norm(x), 1e-300);
  if (is_zero(triangle(in.a1, in.b1, delta(in.a2, in.b2, x, in.m2), in.m1), tol, mixed_scale)) {
    ++used;
    const double scale = scale_iso(a1p, b1p, x, t1) * scale_sym(a2p, b2p, x, t2) /
                         std::max(fro_norm(x), 1e-300);
    trial.conclude("mixed", triangle(a1p, b1p, delta(a2p, b2p, x, t2), t1), scale);
  }
  r.details["implications"] = used;
  r.details["t1"] = t1;
  r.details["t2"] = t2;
  if (used == 0) trial.skip("no implication has a satisfied hypothesis");
  return r;
}

TrialResult check_cor050(const OperatorTuple& t, const OperatorTuple& n, const CMatrix& x,
                         unsigned m1, unsigned m2, const Tolerance& tol) {
  const OperatorTuple ts = adjoint_tuple(t);
  require_conformable(ts, t, x, "check_cor050");
  Trial trial(tol);
  const bool ok = trial.require_commuting("T", t, t) && trial.require_commuting("N", n, n) &&
                  trial.require_commuting("T*,N", ts, n) && trial.require_commuting("T,N", t, n) &&
                  trial.require("isosym(m1,m2)", isosym_defect(ts, t, x, m1, m2),
                                defect_scale(ts, t, x, m1, m2));
  if (!ok) return trial.result();
  const auto order = nilpotency_order(n, static_cast<unsigned>(n.dim()), tol, Strictness::lax);
  if (!order) {
    trial.skip("N is not nilpotent");
    return trial.result();
  }
  const unsigned t1 = m1 + 2 * *order - 2, t2 = m2 + 2 * *order - 2;
  const OperatorTuple ap = sum_tuple(ts, n), bp = sum_tuple(t, n);
  trial.result().details["n"] = *order;
  trial.conclude("isosym(t1,t2)", isosym_defect(ap, bp, x, t1, t2), defect_scale(ap, bp, x, t1, t2));
  probe_isosym(trial, ap, bp, x, t1, t2);
  attach_profile(trial.result(), ap, bp, x);
  return trial.result();
}

// --------------------------------------------------------------------------
// Products

TrialResult check_thm06(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& s,
                        const OperatorTuple& t, const CMatrix& x, unsigned m, unsigned n,
                        unsigned r, unsigned s_deg, const Tolerance& tol) {
  require_conformable(a, b, x, "check_thm06");
  require_conformable(s, t, x, "check_thm06");
  Trial trial(tol);
  const bool ok =
      trial.require_commuting("A", a, a) && trial.require_commuting("B", b, b) &&
      trial.require_commuting("S", s, s) && trial.require_commuting("T", t, t) &&
      trial.require_commuting("A,S", a, s) && trial.require_commuting("B,S", b, s) &&
      trial.require_commuting("B,T", b, t) &&
      trial.require("AB(m,n)", isosym_defect(a, b, x, m, n), defect_scale(a, b, x, m, n)) &&
      trial.require("ST(r,s)", isosym_defect(s, t, x, r, s_deg), defect_scale(s, t, x, r, s_deg)) &&
      trial.require("ST(r,n)", isosym_defect(s, t, x, r, n), defect_scale(s, t, x, r, n)) &&
      trial.require("AB(m,s)", isosym_defect(a, b, x, m, s_deg), defect_scale(a, b, x, m, s_deg));
  if (!ok) return trial.result();
  const unsigned t1 = m + r - 1, t2 = n + s_deg - 1;
  const OperatorTuple sa = product_tuple(s, a), tb = product_tuple(t, b);
  trial.conclude("isosym(t1,t2)", isosym_defect(sa, tb, x, t1, t2), defect_scale(sa, tb, x, t1, t2));
  probe_isosym(trial, sa, tb, x, t1, t2);
  attach_profile(trial.result(), sa, tb, x);
  return trial.result();
}

namespace {

TrialResult product_implication(Trial& trial, const OperatorTuple& a, const OperatorTuple& b,
                                const OperatorTuple& s, const OperatorTuple& t, const CMatrix& x,
                                unsigned m, unsigned n, IdentityKind kind) {
  if (kind == IdentityKind::both) {
    throw std::invalid_argument("product implication: kind must be isometric or symmetric");
  }
  const bool iso = kind == IdentityKind::isometric;
  const bool ok = trial.require("AB", single_defect(a, b, x, m, iso), single_scale(a, b, x, m, iso)) &&
                  trial.require("ST", single_defect(s, t, x, n, iso), single_scale(s, t, x, n, iso));
  if (!ok) return trial.result();
  const unsigned deg = m + n - 1;
  const OperatorTuple sa = product_tuple(s, a), tb = product_tuple(t, b);
  trial.conclude(iso ? "triangle^{m+n-1}" : "delta^{m+n-1}", single_defect(sa, tb, x, deg, iso),
                 single_scale(sa, tb, x, deg, iso));
  probe_single(trial, sa, tb, x, deg, iso);
  attach_profile(trial.result(), sa, tb, x);
  return trial.result();
}

}  // namespace

TrialResult check_cor06(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& s,
                        const OperatorTuple& t, const CMatrix& x, unsigned m, unsigned n,
                        IdentityKind kind, const Tolerance& tol) {
  require_conformable(a, b, x, "check_cor06");
  require_conformable(s, t, x, "check_cor06");
  Trial trial(tol);
  const bool ok = trial.require_commuting("A", a, a) && trial.require_commuting("B", b, b) &&
                  trial.require_commuting("S", s, s) && trial.require_commuting("T", t, t) &&
                  trial.require_commuting("A,S", a, s) && trial.require_commuting("B,S", b, s) &&
                  trial.require_commuting("B,T", b, t);
  if (!ok) return trial.result();
  return product_implication(trial, a, b, s, t, x, m, n, kind);
}

TrialResult check_cor062(const CMatrix& a, const CMatrix& b, const OperatorTuple& s,
                         const OperatorTuple& t, const CMatrix& x, unsigned m, unsigned n,
                         IdentityKind kind, const Tolerance& tol) {
  const OperatorTuple at({a}), bt({b});
  require_conformable(at, bt, x, "check_cor062");
  require_conformable(s, t, x, "check_cor062");
  Trial trial(tol);
  const bool ok = trial.require_commuting("S", s, s) && trial.require_commuting("T", t, t) &&
                  trial.require_commuting("A,S", at, s) && trial.require_commuting("B,T", bt, t);
  if (!ok) return trial.result();
  return product_implication(trial, at, bt, s, t, x, m, n, kind);
}

TrialResult check_cor061(const OperatorTuple& s, const OperatorTuple& t, const CMatrix& x,
                         unsigned m, unsigned n, IdentityKind kind, const Tolerance& tol) {
  const OperatorTuple ss = adjoint_tuple(s), cs = conj_tuple(s);
  const OperatorTuple ts = adjoint_tuple(t), ct = conj_tuple(t);
  require_conformable(ss, cs, x, "check_cor061");
  require_conformable(ts, ct, x, "check_cor061");
  Trial trial(tol);
  const bool ok = trial.require_commuting("S", s, s) && trial.require_commuting("T", t, t) &&
                  trial.require_commuting("S,T", s, t) && trial.require_commuting("S*,CTC", ss, ct);
  if (!ok) return trial.result();
  const bool iso = kind == IdentityKind::isometric;
  if (kind == IdentityKind::both) throw std::invalid_argument("check_cor061: kind must be single");
  const bool hyp = trial.require("(S*,CSC)", single_defect(ss, cs, x, m, iso),
                                 single_scale(ss, cs, x, m, iso)) &&
                   trial.require("(T*,CTC)", single_defect(ts, ct, x, n, iso),
                                 single_scale(ts, ct, x, n, iso));
  if (!hyp) return trial.result();
  const unsigned deg = m + n - 1;
  const OperatorTuple left = product_tuple(ss, ts);
  std::vector<CMatrix> right;
  for (const auto& c : product_tuple(s, t)) right.push_back(conjugation_apply(c));
  const OperatorTuple rt(std::move(right));
  trial.conclude(iso ? "triangle^{m+n-1}" : "delta^{m+n-1}", single_defect(left, rt, x, deg, iso),
                 single_scale(left, rt, x, deg, iso));
  probe_single(trial, left, rt, x, deg, iso);
  attach_profile(trial.result(), left, rt, x);
  return trial.result();
}

TrialResult check_thm07(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& s,
                        const OperatorTuple& t, unsigned m, unsigned n, unsigned r,
                        unsigned s_deg, Thm07Variant variant, const Tolerance& tol) {
  const CMatrix ia = identity(a.dim()), is = identity(s.dim());
  require_conformable(a, b, ia, "check_thm07");
  require_conformable(s, t, is, "check_thm07");
  Trial trial(tol);
  const OperatorTuple as = tensor_tuple(a, s), bt = tensor_tuple(b, t);
  const CMatrix big = identity(as.dim());
  if (variant != Thm07Variant::ii) {
    const bool iso = variant == Thm07Variant::i_isometric;
    const bool ok = trial.require("AB", single_defect(a, b, ia, m, iso), single_scale(a, b, ia, m, iso)) &&
                    trial.require("ST", single_defect(s, t, is, n, iso), single_scale(s, t, is, n, iso));
    if (!ok) return trial.result();
    const unsigned deg = m + n - 1;
    trial.conclude(iso ? "triangle^{m+n-1}" : "delta^{m+n-1}",
                   single_defect(as, bt, big, deg, iso), single_scale(as, bt, big, deg, iso));
    probe_single(trial, as, bt, big, deg, iso);
  } else {
    const bool ok =
        trial.require("AB(m,n)", isosym_defect(a, b, ia, m, n), defect_scale(a, b, ia, m, n)) &&
        trial.require("ST triangle^r", triangle(s, t, is, r), scale_iso(s, t, is, r)) &&
        trial.require("ST delta^s", delta(s, t, is, s_deg), scale_sym(s, t, is, s_deg));
    if (!ok) return trial.result();
    const unsigned t1 = m + r - 1, t2 = n + s_deg - 1;
    trial.conclude("isosym(t1,t2)", isosym_defect(as, bt, big, t1, t2),
                   defect_scale(as, bt, big, t1, t2));
    probe_isosym(trial, as, bt, big, t1, t2);
  }
  attach_profile(trial.result(), as, bt, big);
  return trial.result();
}

TrialResult check_ex00(const CMatrix& t, const CMatrix& a0, const CMatrix& u) {
  const Complex i{0.0, 1.0};
  Trial trial(Tolerance(1e-12, 0.0));
  const CMatrix s = u * t;
  const OperatorTuple tt({t}), ts({t.adjoint()}), st({s}), ss({s.adjoint()});
  CMatrix sas(2, 2), s2as2(2, 2), d2s(2, 2);
  sas << 1.0, 1.0, 1.0, 1.0;
  s2as2 << 1.0, 1.0 - i, 1.0 + i, 2.0;
  d2s << -1.0, -1.0 - i, -1.0 + i, 1.0;
  trial.conclude("triangle^2_{T*,T}(A0)", triangle(ts, tt, a0, 2), 0.0);
  trial.conclude("S*A0S", s.adjoint() * a0 * s - sas, 0.0);
  trial.conclude("S*^2A0S^2", (s * s).adjoint() * a0 * (s * s) - s2as2, 0.0);
  const CMatrix got = triangle(ss, st, a0, 2);
  trial.conclude("triangle^2_{S*,S}(A0)", got - d2s, 0.0);
  TrialResult r = trial.result();
  r.bound = 2;
  r.sharpness_defect = fro_norm(got);
  r.sharpness_witness = r.sharpness_defect > 1.0;
  return r;
}

// --------------------------------------------------------------------------
// Campaigns

const std::vector<std::string>& campaign_ids() { return instance_profiles(); }

unsigned campaign_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ISOTUPLE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

unsigned p(const Bundle& b, const char* name) { return static_cast<unsigned>(b.param(name)); }

IdentityKind variant_kind(const Bundle& b) {
  return b.param("variant") == 0 ? IdentityKind::isometric : IdentityKind::symmetric;
}

ConvergentFamily family_from(const Bundle& b) {
  const int count = b.param("members");
  std::vector<OperatorTuple> am, bm;
  for (int k = 0; k < count; ++k) {
    am.push_back(b.tuple("A_" + std::to_string(k)));
    bm.push_back(b.tuple("B_" + std::to_string(k)));
  }
  const int kind = b.param("kind");
  return ConvergentFamily{std::move(am), std::move(bm), b.tuple("A"), b.tuple("B"), b.matrix("X"),
                          p(b, "m1"), p(b, "m2"),
                          kind == 0 ? IdentityKind::isometric
                                    : (kind == 1 ? IdentityKind::symmetric : IdentityKind::both)};
}

}  // namespace

TrialResult check_bundle(const std::string& id, const Bundle& b, const CampaignConfig& c) {
  const Tolerance& tol = c.tol;
  if (id == "pro01") {
    return check_pro01(b.tuple("A"), b.tuple("B"), b.matrix("X"), p(b, "m"), c.t_max, tol);
  }
  if (id == "pro02") return check_pro02(family_from(b), tol);
  if (id == "pro03") {
    return check_pro03(b.tuple("A"), b.tuple("B"), b.matrix("X"), p(b, "m"),
                       b.param("part") == 0 ? Pro03Part::isometric : Pro03Part::symmetric, tol);
  }
  if (id == "pro04") return check_pro04(b.tuple("A"), tol);
  if (id == "pro5") return check_pro5(b.tuple("A"), p(b, "m"), tol);
  if (id == "thm05") {
    return check_thm05(b.tuple("A"), b.tuple("B"), b.tuple("N1"), b.tuple("N2"), b.matrix("X"),
                       p(b, "m1"), p(b, "m2"), tol);
  }
  if (id == "cor05") {
    return check_cor05(Cor05Input{b.tuple("A1"), b.tuple("B1"), b.tuple("A2"), b.tuple("B2"),
                                  b.tuple("N1"), b.tuple("N2"), b.matrix("X"), p(b, "m1"),
                                  p(b, "m2")},
                       tol);
  }
  if (id == "cor050") {
    return check_cor050(b.tuple("T"), b.tuple("N"), b.matrix("X"), p(b, "m1"), p(b, "m2"), tol);
  }
  if (id == "thm06") {
    return check_thm06(b.tuple("A"), b.tuple("B"), b.tuple("S"), b.tuple("T"), b.matrix("X"),
                       p(b, "m"), p(b, "n"), p(b, "r"), p(b, "s"), tol);
  }
  if (id == "cor06") {
    return check_cor06(b.tuple("A"), b.tuple("B"), b.tuple("S"), b.tuple("T"), b.matrix("X"),
                       p(b, "m"), p(b, "n"), variant_kind(b), tol);
  }
  if (id == "cor062") {
    return check_cor062(b.tuple("A")[0], b.tuple("B")[0], b.tuple("S"), b.tuple("T"),
                        b.matrix("X"), p(b, "m"), p(b, "n"), variant_kind(b), tol);
  }
  if (id == "cor061") {
    return check_cor061(b.tuple("S"), b.tuple("T"), b.matrix("X"), p(b, "m"), p(b, "n"),
                        variant_kind(b), tol);
  }
  if (id == "thm07") {
    const int v = b.param("variant");
    const Thm07Variant variant =
        v == 0 ? Thm07Variant::i_isometric : (v == 1 ? Thm07Variant::i_symmetric : Thm07Variant::ii);
    return check_thm07(b.tuple("A"), b.tuple("B"), b.tuple("S"), b.tuple("T"), p(b, "m"),
                       p(b, "n"), p(b, "r"), p(b, "s"), variant, tol);
  }
  if (id == "ex00-golden") return check_ex00(b.matrix("T"), b.matrix("A0"), b.matrix("U"));
  throw std::invalid_argument("unknown theorem id '" + id + "'");
}

TrialRecord run_trial(const CampaignConfig& config, std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  const unsigned attempts = std::max(1u, config.attempts_per_trial);
  for (unsigned j = 0; j < attempts; ++j) {
    rec.seed = mix_seed(config.seed, static_cast<std::uint64_t>(index) * attempts + j);
    Bundle bundle = random_instance(config.theorem_id, rec.seed);
    rec.result = check_bundle(config.theorem_id, bundle, config);
    if (rec.result.status != TrialStatus::skipped) {
      if (rec.result.status != TrialStatus::pass) rec.bundle = std::move(bundle);
      return rec;
    }
    ++rec.skipped_attempts;
  }
  return rec;
}

CampaignReport run_campaign(const CampaignConfig& config) {
  const auto& ids = campaign_ids();
  if (std::find(ids.begin(), ids.end(), config.theorem_id) == ids.end()) {
    throw std::invalid_argument("run_campaign: unknown theorem id '" + config.theorem_id + "'");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  // Completed trials keyed by index; sized by progress, not by the request.
  std::map<std::size_t, TrialRecord> slots;
  std::mutex slots_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> over_budget{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      if (config.budget_seconds > 0.0 && elapsed() > config.budget_seconds) {
        over_budget = true;
        return;
      }
      const std::size_t i = next.fetch_add(1);
      if (i >= config.trials) return;
      try {
        TrialRecord rec = run_trial(config, i);
        std::lock_guard lock(slots_mutex);
        slots.emplace(i, std::move(rec));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
        return;
      }
    }
  };
  const unsigned nthreads =
      static_cast<unsigned>(std::min<std::size_t>(campaign_threads(config.threads),
                                                   std::max<std::size_t>(config.trials, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  CampaignReport rep;
  rep.theorem_id = config.theorem_id;
  rep.seed = config.seed;
  rep.requested_trials = config.trials;
  rep.tol = config.tol;
  rep.budget_exceeded = over_budget;
  for (auto& [index, rec] : slots) {
    ++rep.completed;
    rep.skipped += rec.skipped_attempts;
    const TrialResult& r = rec.result;
    if (r.status == TrialStatus::skipped) continue;
    ++rep.trials;
    rep.max_defect_ratio = std::max(rep.max_defect_ratio, r.ratio());
    if (r.bound && r.empirical_min_degree) ++rep.slack_histogram[*r.bound - *r.empirical_min_degree];
    switch (r.status) {
      case TrialStatus::pass:
        ++rep.passes;
        if (r.sharpness_witness) rep.sharpness_witnesses.push_back(rec);
        break;
      case TrialStatus::anomaly:
        ++rep.tolerance_anomalies;
        rep.anomalies.push_back(std::move(rec));
        break;
      case TrialStatus::counterexample:
        rep.counterexamples.push_back(std::move(rec));
        break;
      case TrialStatus::skipped:
        break;
    }
  }
  rep.wall_time = elapsed();
  return rep;
}

}  // namespace isotuple
