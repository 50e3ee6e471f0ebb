#pragma once

#include "isotuple/transforms.hpp"

#include <optional>
#include <vector>

namespace isotuple {

// Every verdict here is is_zero(defect, tol, defect_scale(A, B, X, m, n)).

bool is_isometric(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned m,
                  const Tolerance& tol = {});
bool is_symmetric(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned n,
                  const Tolerance& tol = {});
bool is_isosymmetric(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                     unsigned m, unsigned n, const Tolerance& tol = {});

inline constexpr unsigned kDefaultKMax = 12;

struct DefectProfile {
  std::vector<double> triangle_norms;  // ||triangle^k(X)||_F, k = 0..k_max
  std::vector<double> delta_norms;     // ||delta^k(X)||_F,    k = 0..k_max
  std::vector<double> triangle_thresholds;
  std::vector<double> delta_thresholds;
  std::optional<unsigned> min_isometry_degree;
  std::optional<unsigned> min_symmetry_degree;
  double scale = 0.0;  // ||X||_F, the degree-independent factor of defect_scale
  // Degrees k >= min degree that fail although a lower degree passed. The
  // degree monotonicity of both defects makes these tolerance artefacts.
  std::vector<unsigned> isometry_anomalies;
  std::vector<unsigned> symmetry_anomalies;

  unsigned k_max() const { return static_cast<unsigned>(triangle_norms.size()) - 1; }
  bool has_anomalies() const { return !isometry_anomalies.empty() || !symmetry_anomalies.empty(); }
};

DefectProfile defect_profile(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                             unsigned k_max = kDefaultKMax, const Tolerance& tol = {});

struct SphericalReport {
  bool spherical_isometry = false;  // (A*, A) is (I,1)-isometric
  double defect1_norm = 0.0;        // ||I - sum A_i^* A_i||_F
  double defect2_norm = 0.0;
  double gram_condition = 0.0;      // cond(sum A_i^* A_i)
};

/// For (A*, A) (I,2)-isometric with sum A_i^* A_i nonsingular, reports whether
/// the tuple is a spherical isometry. Violated preconditions throw invalid_argument;
/// a negative verdict is returned, not thrown.
SphericalReport spherical_reduction_check(const OperatorTuple& a, const Tolerance& tol = {});

}  // namespace isotuple
