#pragma once

#include "isotuple/matrix.hpp"
#include "isotuple/tuple.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace isotuple {

// Elementary-operator transforms on pairs of d-tuples (A, B):
//
//   sigma(X)     = sum_i A_i X B_i
//   triangle^m   = (I - sigma)^m            "isometric defect"
//   delta^n      = (L_{sum A} - R_{sum B})^n  "symmetric defect"
//
// vec convention is column stacking, so vec(A X B) = (B^T (x) A) vec(X).

/// Raised when the multinomial expansion would enumerate too many words.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PowerMode { iterate, expand };
enum class SuperopKind { sigma, left_sum, right_sum };

/// Throws invalid_argument unless A, B have the same length and A, B, X the same dimension.
void require_conformable(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                         const char* where);

CMatrix sigma_apply(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x);

/// sigma^j(X). `iterate` applies sigma j times; `expand` evaluates
/// sum_{|alpha|=j} (j!/alpha!) A^alpha X B^alpha, which equals the iterate
/// only for commuting tuples. Expansion is limited to j*log2(d) <= 20.
CMatrix sigma_power(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned j,
                    PowerMode mode = PowerMode::iterate,
                    Strictness strictness = Strictness::lax);

/// [sigma^0(X), ..., sigma^jmax(X)] by iteration.
std::vector<CMatrix> sigma_powers(const OperatorTuple& a, const OperatorTuple& b,
                                  const CMatrix& x, unsigned jmax);

/// Binomial sum  sum_j (-1)^j C(m,j) sigma^j(X).
CMatrix triangle(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned m);
/// Same value by applying (I - sigma) m times.
CMatrix triangle_iterated(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                          unsigned m);
/// triangle^k(X) for k = 0..kmax sharing one set of sigma powers.
std::vector<CMatrix> triangle_all(const OperatorTuple& a, const OperatorTuple& b,
                                  const CMatrix& x, unsigned kmax);

/// sum_j (-1)^j C(n,j) (sum A)^{n-j} X (sum B)^j
CMatrix delta(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned n);
/// Same value by applying X -> (sum A) X - X (sum B) n times.
CMatrix delta_iterated(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                       unsigned n);
std::vector<CMatrix> delta_all(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                               unsigned kmax);

/// triangle^m(delta^n(X))
CMatrix isosym_defect(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                      unsigned m, unsigned n);

/// n^2 x n^2 matrix of the map on vec(X):
///   sigma     -> sum_i B_i^T (x) A_i
///   left_sum  -> I (x) sum_i A_i
///   right_sum -> (sum_i B_i)^T (x) I
CMatrix superop_matrix(const OperatorTuple& a, const OperatorTuple& b, SuperopKind kind);

/// Magnitude against which a defect of degree (m, n) is judged zero:
///   ||X||_F * (1 + rho)^m * (alpha + beta)^n
/// with rho = sum_i ||A_i||_2 ||B_i||_2, alpha = sum_i ||A_i||_2, beta = sum_i ||B_i||_2.
/// This bounds the sum of magnitudes of the terms in the binomial expansions,
/// i.e. the size of the quantities that cancel.
double defect_scale(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                    unsigned m, unsigned n = 0);

/// C(t, k) as a double (exact while it fits in 53 bits).
double binomial_real(unsigned t, unsigned k);

/// For t = m..t_max, e_t = || sigma^t(X) / C(t, m-1) - (-1)^{m-1} triangle^{m-1}(X) ||_F.
/// Requires triangle^m(X) = 0 within tol (scaled by defect_scale); otherwise
/// throws invalid_argument carrying the defect norm.
std::vector<std::pair<unsigned, double>> cesaro_estimate(const OperatorTuple& a,
                                                         const OperatorTuple& b,
                                                         const CMatrix& x, unsigned m,
                                                         unsigned t_max,
                                                         const Tolerance& tol = {});

}  // namespace isotuple
