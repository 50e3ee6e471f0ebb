#include "isotuple/classify.hpp"

#include <sstream>

namespace isotuple {

bool is_isometric(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned m,
                  const Tolerance& tol) {
  return is_zero(triangle(a, b, x, m), tol, defect_scale(a, b, x, m));
}

bool is_symmetric(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned n,
                  const Tolerance& tol) {
  return is_zero(delta(a, b, x, n), tol, defect_scale(a, b, x, 0, n));
}

bool is_isosymmetric(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                     unsigned m, unsigned n, const Tolerance& tol) {
  return is_zero(isosym_defect(a, b, x, m, n), tol, defect_scale(a, b, x, m, n));
}

namespace {

void summarize(const std::vector<double>& norms, const std::vector<double>& thresholds,
               std::optional<unsigned>& min_degree, std::vector<unsigned>& anomalies) {
  for (unsigned k = 1; k < norms.size(); ++k) {
    const bool pass = norms[k] <= thresholds[k];
    if (pass && !min_degree) min_degree = k;
    if (!pass && min_degree) anomalies.push_back(k);
  }
}

}  // namespace

DefectProfile defect_profile(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                             unsigned k_max, const Tolerance& tol) {
  if (k_max == 0) throw std::invalid_argument("defect_profile: k_max must be >= 1");
  require_conformable(a, b, x, "defect_profile");
  DefectProfile p;
  p.scale = fro_norm(x);
  const auto tri = triangle_all(a, b, x, k_max);
  const auto del = delta_all(a, b, x, k_max);
  for (unsigned k = 0; k <= k_max; ++k) {
    p.triangle_norms.push_back(fro_norm(tri[k]));
    p.delta_norms.push_back(fro_norm(del[k]));
    p.triangle_thresholds.push_back(tol.threshold(defect_scale(a, b, x, k)));
    p.delta_thresholds.push_back(tol.threshold(defect_scale(a, b, x, 0, k)));
  }
  summarize(p.triangle_norms, p.triangle_thresholds, p.min_isometry_degree, p.isometry_anomalies);
  summarize(p.delta_norms, p.delta_thresholds, p.min_symmetry_degree, p.symmetry_anomalies);
  return p;
}

SphericalReport spherical_reduction_check(const OperatorTuple& a, const Tolerance& tol) {
  const OperatorTuple as = adjoint_tuple(a);
  const CMatrix id = identity(a.dim());
  SphericalReport r;
  const CMatrix d2 = triangle(as, a, id, 2);
  r.defect2_norm = fro_norm(d2);
  if (!is_zero(d2, tol, defect_scale(as, a, id, 2))) {
    std::ostringstream os;
    os << "spherical_reduction_check: (A*, A) is not (I,2)-isometric (defect " << r.defect2_norm
       << ")";
    throw std::invalid_argument(os.str());
  }
  const CMatrix gram = sigma_apply(as, a, id);
  r.gram_condition = condition_number(gram);
  if (!(r.gram_condition <= 1e12)) {
    std::ostringstream os;
    os << "spherical_reduction_check: sum A_i^* A_i is singular (condition " << r.gram_condition
       << ")";
    throw std::invalid_argument(os.str());
  }
  const CMatrix d1 = id - gram;
  r.defect1_norm = fro_norm(d1);
  r.spherical_isometry = is_zero(d1, tol, defect_scale(as, a, id, 1));
  return r;
}

}  // namespace isotuple
