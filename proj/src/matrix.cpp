#include "isotuple/matrix.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace isotuple {

Tolerance::Tolerance(double abs, double rel) : abs_eps(abs), rel_eps(rel) {
  if (!(abs >= 0.0) || !(rel >= 0.0)) {
    throw std::invalid_argument("Tolerance: abs_eps and rel_eps must be non-negative");
  }
}

namespace {

std::string dims(const CMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

void require_square(const CMatrix& m, const char* where) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(where) + ": expected non-empty square matrix, got " +
                                dims(m));
  }
}

void require_finite(const CMatrix& m, const char* where) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(where) + ": non-finite entry");
}

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch " + dims(a) + " vs " +
                                dims(b));
  }
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }
CMatrix zero(Eigen::Index n) { return CMatrix::Zero(n, n); }

CMatrix add(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "add");
  return a + b;
}

CMatrix sub(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "sub");
  return a - b;
}

CMatrix mul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("mul: dimension mismatch " + dims(a) + " * " + dims(b));
  }
  return a * b;
}

CMatrix scale(const CMatrix& a, Complex c) { return c * a; }
CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }
CMatrix conj(const CMatrix& a) { return a.conjugate(); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix power(const CMatrix& a, unsigned p) {
  require_square(a, "power");
  CMatrix result = identity(a.rows());
  CMatrix base = a;
  while (p) {
    if (p & 1u) result = result * base;
    p >>= 1;
    if (p) base = base * base;
  }
  return result;
}

double fro_norm(const CMatrix& a) { return a.norm(); }

double op_norm_estimate(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double condition_number(const CMatrix& a) {
  require_square(a, "condition_number");
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

CMatrix inverse(const CMatrix& a, double max_condition) {
  require_square(a, "inverse");
  const double cond = condition_number(a);
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "inverse: matrix is numerically singular (condition estimate " << cond << ")";
    throw SingularMatrixError(os.str(), cond);
  }
  return a.partialPivLu().inverse();
}

bool is_zero(const CMatrix& m, const Tolerance& tol, double scale) {
  return fro_norm(m) <= tol.threshold(scale);
}

CVector vec(const CMatrix& x) {
  return Eigen::Map<const CVector>(x.data(), x.size());
}

CMatrix unvec(const CVector& v, Eigen::Index n) {
  if (v.size() != n * n) throw std::invalid_argument("unvec: length is not n*n");
  return Eigen::Map<const CMatrix>(v.data(), n, n);
}

}  // namespace isotuple
