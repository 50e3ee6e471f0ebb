#pragma once

// Reference evaluations used only by the tests. They share no code with the
// library beyond the CMatrix type: Kronecker products, vec and the defect
// powers are written out directly on the n^2 x n^2 superoperator.

#include "isotuple/tuple.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using isotuple::CMatrix;
using isotuple::Complex;
using isotuple::OperatorTuple;
using CVec = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline CVec vec(const CMatrix& x) {
  CVec v(x.size());
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) v(j * x.rows() + i) = x(i, j);
  return v;
}

inline CMatrix unvec(const CVec& v, Eigen::Index n) {
  CMatrix x(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = v(j * n + i);
  return x;
}

inline CMatrix eye(Eigen::Index n) { return CMatrix::Identity(n, n); }

// vec(A X B) = (B^T (x) A) vec(X)
inline CMatrix sigma_super(const OperatorTuple& a, const OperatorTuple& b) {
  const Eigen::Index n = a.dim();
  CMatrix s = CMatrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < a.size(); ++i) s += kron(b[i].transpose(), a[i]);
  return s;
}

inline CMatrix symmetric_super(const OperatorTuple& a, const OperatorTuple& b) {
  const Eigen::Index n = a.dim();
  CMatrix sa = CMatrix::Zero(n, n), sb = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
  }
  return kron(eye(n), sa) - kron(sb.transpose(), eye(n));
}

inline CVec apply_power(const CMatrix& op, CVec v, unsigned k) {
  for (unsigned i = 0; i < k; ++i) v = op * v;
  return v;
}

inline CMatrix triangle(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                        unsigned m) {
  const Eigen::Index n = a.dim();
  const CMatrix op = eye(n * n) - sigma_super(a, b);
  return unvec(apply_power(op, vec(x), m), n);
}

inline CMatrix delta(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                     unsigned k) {
  return unvec(apply_power(symmetric_super(a, b), vec(x), k), a.dim());
}

inline CMatrix isosym(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                      unsigned m, unsigned k) {
  return oracle::triangle(a, b, oracle::delta(a, b, x, k), m);
}

inline CMatrix sigma_power(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                           unsigned j) {
  return unvec(apply_power(sigma_super(a, b), vec(x), j), a.dim());
}

// Exact small binomials by Pascal's triangle.
inline std::uint64_t pascal(unsigned m, unsigned j) {
  if (j > m) return 0;
  std::vector<std::uint64_t> row{1};
  for (unsigned r = 1; r <= m; ++r) {
    std::vector<std::uint64_t> next(r + 1, 1);
    for (unsigned c = 1; c < r; ++c) next[c] = row[c - 1] + row[c];
    row = std::move(next);
  }
  return row[j];
}

// Deterministic test source, separate from the library's Rng.
class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  double normal() { return dist_(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  CMatrix gaussian(Eigen::Index n) {
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal(), normal()) / std::sqrt(2.0 * n);
    return m;
  }

  // d polynomials of degree <= 2 in one seed matrix; commute exactly in
  // exact arithmetic. Coefficients are small so defects stay moderate.
  OperatorTuple commuting(Eigen::Index n, std::size_t d, double size = 0.5) {
    const CMatrix seed = gaussian(n);
    std::vector<CMatrix> comps;
    for (std::size_t i = 0; i < d; ++i) {
      const Complex c0(normal(), normal()), c1(normal(), normal()), c2(normal(), normal());
      comps.push_back(size * (c0 * eye(n) + c1 * seed + 0.5 * c2 * seed * seed) / std::sqrt(double(d)));
    }
    return OperatorTuple(std::move(comps));
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace oracle
