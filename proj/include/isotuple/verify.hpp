#pragma once

#include "isotuple/classify.hpp"
#include "isotuple/generators.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace isotuple {

enum class TrialStatus { pass, counterexample, skipped, anomaly };
const char* to_string(TrialStatus s);

/// A conclusion that fails its threshold by at most this factor is a
/// tolerance anomaly rather than a counterexample.
inline constexpr double kAnomalyFactor = 1e3;

struct TrialResult {
  TrialStatus status = TrialStatus::pass;
  std::string reason;
  double defect = 0.0;     // conclusion defect norm (worst conclusion)
  double threshold = 0.0;  // its pass threshold
  std::optional<unsigned> bound;                 // degree bound tested
  std::optional<unsigned> empirical_min_degree;  // least degree that already vanishes
  bool sharpness_witness = false;                // defect one degree below the bound is nonzero
  double sharpness_defect = 0.0;
  std::vector<double> defect_norms;  // conclusion defects at degrees 0..k_max (failures only)
  std::map<std::string, double> details;

  double ratio() const { return threshold > 0.0 ? defect / threshold : 0.0; }
};

// ---- Single-tuple statements

/// Cesàro limit: e_{t_max} <= 5 max_{j<m} ||triangle^j(X)|| (m-1)/t_max.
/// For m >= 2 and an invertible sigma superoperator the check also
/// evaluates the invertibility clause triangle^{m-1}(X) = 0.
TrialResult check_pro01(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                        unsigned m, unsigned t_max = 1000, const Tolerance& tol = {});

TrialResult check_pro04(const OperatorTuple& a, const Tolerance& tol = {});

/// m must be even and positive.
TrialResult check_pro5(const OperatorTuple& a, unsigned m, const Tolerance& tol = {});

enum class IdentityKind { isometric, symmetric, both };

/// Members (A_k, B_k) converging in norm to (A, B). Members satisfy
/// triangle^{m1} = 0, delta^{m2} = 0, or both, according to `kind`.
struct ConvergentFamily {
  std::vector<OperatorTuple> a_members;
  std::vector<OperatorTuple> b_members;
  OperatorTuple a_limit;
  OperatorTuple b_limit;
  CMatrix x;
  unsigned m1 = 1;
  unsigned m2 = 1;
  IdentityKind kind = IdentityKind::isometric;
};

/// Residual sequence max_i (||A_ik - A_i||_2 + ||B_ik - B_i||_2).
std::vector<double> convergence_residuals(const ConvergentFamily& f);

/// Throws invalid_argument when the family does not converge: the last
/// residual must be <= 1e-3 and below the first.
TrialResult check_pro02(const ConvergentFamily& f, const Tolerance& tol = {});

enum class Pro03Part { isometric, symmetric };

TrialResult check_pro03(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                        unsigned m, Pro03Part part, const Tolerance& tol = {});

// ---- Nilpotent perturbations

TrialResult check_thm05(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& n1,
                        const OperatorTuple& n2, const CMatrix& x, unsigned m1, unsigned m2,
                        const Tolerance& tol = {});

struct Cor05Input {
  OperatorTuple a1, b1, a2, b2, n1, n2;
  CMatrix x;
  unsigned m1 = 1;
  unsigned m2 = 1;
};

/// The three implications; each one is vacuous when its own hypothesis fails.
TrialResult check_cor05(const Cor05Input& in, const Tolerance& tol = {});

/// Nilpotent perturbation with A = T*, B = T and N1 = N2 = N.
TrialResult check_cor050(const OperatorTuple& t, const OperatorTuple& n, const CMatrix& x,
                         unsigned m1, unsigned m2, const Tolerance& tol = {});

// ---- Products and tensor products

TrialResult check_thm06(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& s,
                        const OperatorTuple& t, const CMatrix& x, unsigned m, unsigned n,
                        unsigned r, unsigned s_deg, const Tolerance& tol = {});

/// Product corollary: triangle^m_{A,B} = triangle^n_{S,T} = 0 gives triangle^{m+n-1} on
/// the product tuples (resp. delta).
TrialResult check_cor06(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& s,
                        const OperatorTuple& t, const CMatrix& x, unsigned m, unsigned n,
                        IdentityKind kind, const Tolerance& tol = {});

/// Single-operator form of check_cor06 with single operators A and B.
TrialResult check_cor062(const CMatrix& a, const CMatrix& b, const OperatorTuple& s,
                         const OperatorTuple& t, const CMatrix& x, unsigned m, unsigned n,
                         IdentityKind kind, const Tolerance& tol = {});

/// Conjugation corollary on the pairs (S*, CSC) and (T*, CTC), C the standard-basis conjugation.
TrialResult check_cor061(const OperatorTuple& s, const OperatorTuple& t, const CMatrix& x,
                         unsigned m, unsigned n, IdentityKind kind, const Tolerance& tol = {});

enum class Thm07Variant { i_isometric, i_symmetric, ii };

TrialResult check_thm07(const OperatorTuple& a, const OperatorTuple& b, const OperatorTuple& s,
                        const OperatorTuple& t, unsigned m, unsigned n, unsigned r,
                        unsigned s_deg, Thm07Variant variant, const Tolerance& tol = {});

/// Golden mixing example: triangle^2_{T*,T}(A0) = 0, the literal values of
/// S*A0S, S*^2A0S^2 and triangle^2_{S*,S}(A0), all within 1e-12 absolute.
/// A nonzero triangle^2_{S*,S}(A0) is reported as a sharpness witness.
TrialResult check_ex00(const CMatrix& t, const CMatrix& a0, const CMatrix& u);

// ---- Campaigns

/// Identifiers accepted by run_campaign.
const std::vector<std::string>& campaign_ids();

struct CampaignConfig {
  std::string theorem_id;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  Tolerance tol;
  double budget_seconds = 0.0;  // 0 disables the budget
  unsigned threads = 0;         // 0: ISOTUPLE_THREADS or all cores
  unsigned attempts_per_trial = 10;
  unsigned t_max = 1000;        // pro01 Cesàro horizon
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;  // random_instance seed that produced the inputs
  unsigned skipped_attempts = 0;
  TrialResult result;
  std::optional<Bundle> bundle;  // kept for counterexamples and anomalies
};

struct CampaignReport {
  static constexpr int kSchemaVersion = 1;
  std::string theorem_id;
  std::uint64_t seed = 0;
  std::size_t requested_trials = 0;
  std::size_t trials = 0;  // hypothesis-valid trials
  std::size_t passes = 0;
  std::size_t tolerance_anomalies = 0;
  std::size_t skipped = 0;  // discarded attempts, not part of `trials`
  std::vector<TrialRecord> counterexamples;
  std::vector<TrialRecord> anomalies;
  std::vector<TrialRecord> sharpness_witnesses;
  std::map<unsigned, std::size_t> slack_histogram;  // bound - empirical minimal degree
  double max_defect_ratio = 0.0;                    // max defect / threshold over valid trials
  bool budget_exceeded = false;
  std::size_t completed = 0;  // trial slots finished (valid or exhausted)
  Tolerance tol;
  double wall_time = 0.0;
};

/// Effective worker count: explicit value, else ISOTUPLE_THREADS, else all cores.
unsigned campaign_threads(unsigned requested);

/// Runs one trial slot: draws bundles until a hypothesis-valid one or the
/// attempt limit. Deterministic in (config, index).
TrialRecord run_trial(const CampaignConfig& config, std::size_t index);

/// Runs the checker for `theorem_id` on a bundle from random_instance.
TrialResult check_bundle(const std::string& theorem_id, const Bundle& bundle,
                         const CampaignConfig& config);

/// Throws invalid_argument for an unknown id; budget overrun yields a
/// partial report with budget_exceeded set.
CampaignReport run_campaign(const CampaignConfig& config);

}  // namespace isotuple
