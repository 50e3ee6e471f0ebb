#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace isotuple {

using Complex = std::complex<double>;

/// Dense square complex matrix. Finite-dimensional stand-in for a bounded
/// operator; squareness and finiteness are checked at API boundaries with
/// require_square / require_finite rather than by the type.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Numerical meaning of "= 0": ||M||_F <= abs_eps + rel_eps * scale.
struct Tolerance {
  double abs_eps = 1e-10;
  double rel_eps = 1e-8;

  Tolerance() = default;
  Tolerance(double abs, double rel);

  double threshold(double scale) const { return abs_eps + rel_eps * scale; }
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

void require_square(const CMatrix& m, const char* where);
void require_finite(const CMatrix& m, const char* where);
void require_same_dim(const CMatrix& a, const CMatrix& b, const char* where);

CMatrix identity(Eigen::Index n);
CMatrix zero(Eigen::Index n);

CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix sub(const CMatrix& a, const CMatrix& b);
CMatrix mul(const CMatrix& a, const CMatrix& b);
CMatrix scale(const CMatrix& a, Complex c);
/// Conjugate transpose.
CMatrix adjoint(const CMatrix& a);
/// Entrywise complex conjugate; the standard-basis conjugation C acts as C X C = conj(X).
CMatrix conj(const CMatrix& a);
/// kron(A, B): block (i, j) equals A(i, j) * B.
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// Integer power by repeated squaring; p = 0 gives the identity.
CMatrix power(const CMatrix& a, unsigned p);

double fro_norm(const CMatrix& a);
/// Spectral-norm estimate (largest singular value). Diagnostics only.
double op_norm_estimate(const CMatrix& a);
/// 2-norm condition number from the singular values; +inf when singular.
double condition_number(const CMatrix& a);

/// Inverse of a numerically nonsingular matrix. Throws SingularMatrixError
/// (carrying the condition estimate) when cond(a) exceeds max_condition.
CMatrix inverse(const CMatrix& a, double max_condition = 1e12);

/// ||m||_F <= tol.abs_eps + tol.rel_eps * scale
bool is_zero(const CMatrix& m, const Tolerance& tol, double scale);

/// Column-stacking vec(X).
CVector vec(const CMatrix& x);
CMatrix unvec(const CVector& v, Eigen::Index n);

}  // namespace isotuple
