#include "isotuple/transforms.hpp"

#include "isotuple/multiindex.hpp"

#include <cmath>
#include <sstream>

namespace isotuple {

void require_conformable(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                         const char* where) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << where << ": tuple lengths differ (" << a.size() << " vs " << b.size() << ")";
    throw std::invalid_argument(os.str());
  }
  require_square(x, where);
  if (a.dim() != x.rows() || b.dim() != x.rows()) {
    std::ostringstream os;
    os << where << ": dimension mismatch (A " << a.dim() << ", B " << b.dim() << ", X "
       << x.rows() << ")";
    throw std::invalid_argument(os.str());
  }
}

CMatrix sigma_apply(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x) {
  require_conformable(a, b, x, "sigma_apply");
  CMatrix out = zero(x.rows());
  for (std::size_t i = 0; i < a.size(); ++i) out.noalias() += a[i] * x * b[i];
  return out;
}

namespace {

constexpr double kExpandBudgetLog2 = 20.0;

CMatrix sigma_expand(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                     unsigned j) {
  const double cost = j * std::log2(static_cast<double>(a.size()));
  if (cost > kExpandBudgetLog2) {
    std::ostringstream os;
    os << "sigma_power(expand): j*log2(d) = " << cost << " exceeds budget " << kExpandBudgetLog2;
    throw BudgetError(os.str());
  }
  CMatrix out = zero(x.rows());
  for (const auto& alpha : compositions(a.size(), j)) {
    const auto coeff = static_cast<double>(multinomial(j, alpha));
    out += coeff * (monomial(a, alpha.entries()) * x * monomial(b, alpha.entries()));
  }
  return out;
}

}  // namespace

CMatrix sigma_power(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned j,
                    PowerMode mode, Strictness strictness) {
  require_conformable(a, b, x, "sigma_power");
  if (strictness == Strictness::strict && (!commutes_within(a) || !commutes_within(b))) {
    throw std::invalid_argument("sigma_power: tuples must commute (strict mode)");
  }
  if (mode == PowerMode::expand) return sigma_expand(a, b, x, j);
  CMatrix y = x;
  for (unsigned k = 0; k < j; ++k) y = sigma_apply(a, b, y);
  return y;
}

std::vector<CMatrix> sigma_powers(const OperatorTuple& a, const OperatorTuple& b,
                                  const CMatrix& x, unsigned jmax) {
  require_conformable(a, b, x, "sigma_powers");
  std::vector<CMatrix> out;
  out.reserve(jmax + 1);
  out.push_back(x);
  for (unsigned j = 1; j <= jmax; ++j) out.push_back(sigma_apply(a, b, out.back()));
  return out;
}

namespace {

CMatrix alternating_sum(const std::vector<CMatrix>& terms, unsigned m) {
  CMatrix out = zero(terms.front().rows());
  for (unsigned j = 0; j <= m; ++j) {
    const double c = static_cast<double>(binomial(m, j));
    if (j % 2) {
      out -= c * terms[j];
    } else {
      out += c * terms[j];
    }
  }
  return out;
}

}  // namespace

CMatrix triangle(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned m) {
  return alternating_sum(sigma_powers(a, b, x, m), m);
}

CMatrix triangle_iterated(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                          unsigned m) {
  require_conformable(a, b, x, "triangle_iterated");
  CMatrix y = x;
  for (unsigned k = 0; k < m; ++k) y = y - sigma_apply(a, b, y);
  return y;
}

std::vector<CMatrix> triangle_all(const OperatorTuple& a, const OperatorTuple& b,
                                  const CMatrix& x, unsigned kmax) {
  const auto powers = sigma_powers(a, b, x, kmax);
  std::vector<CMatrix> out;
  for (unsigned k = 0; k <= kmax; ++k) out.push_back(alternating_sum(powers, k));
  return out;
}

namespace {

// terms[j] = (sum A)^{n-j} X (sum B)^j is not reusable across n, so delta_all
// builds the left and right power tables once and recombines.
CMatrix delta_from_tables(const std::vector<CMatrix>& left, const std::vector<CMatrix>& right,
                          const CMatrix& x, unsigned n) {
  CMatrix out = zero(x.rows());
  for (unsigned j = 0; j <= n; ++j) {
    const double c = static_cast<double>(binomial(n, j));
    CMatrix term = left[n - j] * x * right[j];
    if (j % 2) {
      out -= c * term;
    } else {
      out += c * term;
    }
  }
  return out;
}

std::vector<CMatrix> power_table(const CMatrix& m, unsigned kmax) {
  std::vector<CMatrix> out{identity(m.rows())};
  for (unsigned k = 1; k <= kmax; ++k) out.push_back(out.back() * m);
  return out;
}

}  // namespace

CMatrix delta(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned n) {
  require_conformable(a, b, x, "delta");
  return delta_from_tables(power_table(a.sum(), n), power_table(b.sum(), n), x, n);
}

CMatrix delta_iterated(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                       unsigned n) {
  require_conformable(a, b, x, "delta_iterated");
  const CMatrix sa = a.sum();
  const CMatrix sb = b.sum();
  CMatrix y = x;
  for (unsigned k = 0; k < n; ++k) y = sa * y - y * sb;
  return y;
}

std::vector<CMatrix> delta_all(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                               unsigned kmax) {
  require_conformable(a, b, x, "delta_all");
  const auto left = power_table(a.sum(), kmax);
  const auto right = power_table(b.sum(), kmax);
  std::vector<CMatrix> out;
  for (unsigned k = 0; k <= kmax; ++k) out.push_back(delta_from_tables(left, right, x, k));
  return out;
}

CMatrix isosym_defect(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                      unsigned m, unsigned n) {
  return triangle(a, b, delta(a, b, x, n), m);
}

CMatrix superop_matrix(const OperatorTuple& a, const OperatorTuple& b, SuperopKind kind) {
  if (a.size() != b.size() || a.dim() != b.dim()) {
    throw std::invalid_argument("superop_matrix: tuple shapes differ");
  }
  const Eigen::Index n = a.dim();
  switch (kind) {
    case SuperopKind::sigma: {
      CMatrix out = CMatrix::Zero(n * n, n * n);
      for (std::size_t i = 0; i < a.size(); ++i) out += kron(b[i].transpose(), a[i]);
      return out;
    }
    case SuperopKind::left_sum:
      return kron(identity(n), a.sum());
    case SuperopKind::right_sum:
      return kron(b.sum().transpose(), identity(n));
  }
  throw std::invalid_argument("superop_matrix: unknown kind");
}

double defect_scale(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x,
                    unsigned m, unsigned n) {
  double rho = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double na = op_norm_estimate(a[i]);
    const double nb = op_norm_estimate(b[i]);
    rho += na * nb;
    alpha += na;
  }
  for (const auto& c : b) beta += op_norm_estimate(c);
  return fro_norm(x) * std::pow(1.0 + rho, m) * std::pow(alpha + beta, n);
}

double binomial_real(unsigned t, unsigned k) {
  if (k > t) return 0.0;
  k = std::min(k, t - k);
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r = r * (t - i) / (i + 1);
  return r;
}

std::vector<std::pair<unsigned, double>> cesaro_estimate(const OperatorTuple& a,
                                                         const OperatorTuple& b,
                                                         const CMatrix& x, unsigned m,
                                                         unsigned t_max,
                                                         const Tolerance& tol) {
  require_conformable(a, b, x, "cesaro_estimate");
  if (m == 0) throw std::invalid_argument("cesaro_estimate: m must be >= 1");
  if (t_max < m) throw std::invalid_argument("cesaro_estimate: t_max must be >= m");
  const auto powers = sigma_powers(a, b, x, m);
  const CMatrix defect = alternating_sum(powers, m);
  if (!is_zero(defect, tol, defect_scale(a, b, x, m))) {
    std::ostringstream os;
    os << "cesaro_estimate: pair is not (X," << m << ")-isometric (defect norm "
       << fro_norm(defect) << ")";
    throw std::invalid_argument(os.str());
  }
  // sigma^t = sum_k C(t,k) (-1)^k triangle^k, so the top surviving term carries (-1)^{m-1}.
  CMatrix limit = alternating_sum(powers, m - 1);
  if ((m - 1) % 2) limit = -limit;
  std::vector<std::pair<unsigned, double>> out;
  CMatrix y = powers.back();
  for (unsigned t = m; t <= t_max; ++t) {
    if (t > m) y = sigma_apply(a, b, y);
    out.emplace_back(t, fro_norm(y / binomial_real(t, m - 1) - limit));
  }
  return out;
}

}  // namespace isotuple
