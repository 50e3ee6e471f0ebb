#pragma once

#include "isotuple/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isotuple {

/// Ordered d-tuple (A_1, ..., A_d) of square matrices of one common dimension.
/// Commutativity is not part of the type; it is checked where needed.
class OperatorTuple {
 public:
  explicit OperatorTuple(std::vector<CMatrix> components);

  std::size_t size() const { return components_.size(); }
  Eigen::Index dim() const { return components_.front().rows(); }
  const CMatrix& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<CMatrix>& components() const { return components_; }

  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }

  /// A_1 + ... + A_d
  CMatrix sum() const;
  /// sum_i ||A_i||_F
  double norm_sum() const;

 private:
  std::vector<CMatrix> components_;
};

enum class PowerConvention { word, componentwise };

/// How commutativity hypotheses are enforced on user-supplied tuples.
enum class Strictness { strict, lax };

bool commutes_within(const OperatorTuple& t, const Tolerance& tol = {});
bool commutes_cross(const OperatorTuple& s, const OperatorTuple& t, const Tolerance& tol = {});
/// Largest commutator norm ||A_i A_j - A_j A_i||_F over all pairs.
double commutator_residual(const OperatorTuple& t);
double commutator_residual(const OperatorTuple& s, const OperatorTuple& t);

OperatorTuple sum_tuple(const OperatorTuple& a, const OperatorTuple& n);

/// (S_1 A_1, ..., S_1 A_{d1}, S_2 A_1, ..., S_{d2} A_{d1})
OperatorTuple product_tuple(const OperatorTuple& s, const OperatorTuple& a);

/// word: all d^t ordered words of length t, lexicographic by index string.
/// componentwise: (A_1^t, ..., A_d^t).
OperatorTuple power_tuple(const OperatorTuple& a, unsigned t,
                          PowerConvention conv = PowerConvention::word);

OperatorTuple inverse_tuple(const OperatorTuple& a);
OperatorTuple adjoint_tuple(const OperatorTuple& a);
OperatorTuple conj_tuple(const OperatorTuple& a);
OperatorTuple scalar_tuple(Complex c, std::size_t d, Eigen::Index n);

/// (A_1 (x) B_1, ..., A_1 (x) B_{d2}, A_2 (x) B_1, ..., A_{d1} (x) B_{d2})
OperatorTuple tensor_tuple(const OperatorTuple& a, const OperatorTuple& b);

/// S_j = sum_i U(j, i) T_i. U must be d x d and unitary within tol.
OperatorTuple mix_by_unitary(const CMatrix& u, const OperatorTuple& t, const Tolerance& tol = {});

/// N^alpha = N_1^{alpha_1} ... N_d^{alpha_d}
CMatrix monomial(const OperatorTuple& t, const std::vector<unsigned>& alpha);

/// Least n <= max_order such that every monomial N^alpha with |alpha| = n
/// vanishes; nullopt if there is none. A zero tuple has order 1.
/// Under Strictness::strict a non-commuting tuple throws invalid_argument.
std::optional<unsigned> nilpotency_order(const OperatorTuple& n, unsigned max_order,
                                         const Tolerance& tol = {},
                                         Strictness strictness = Strictness::strict);

}  // namespace isotuple
