#include "isotuple/tuple.hpp"

#include "isotuple/multiindex.hpp"

#include <cmath>
#include <sstream>

namespace isotuple {

OperatorTuple::OperatorTuple(std::vector<CMatrix> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("OperatorTuple: d must be >= 1");
  require_square(components_.front(), "OperatorTuple");
  for (const auto& c : components_) {
    require_same_dim(components_.front(), c, "OperatorTuple");
    require_finite(c, "OperatorTuple");
  }
}

CMatrix OperatorTuple::sum() const {
  CMatrix s = zero(dim());
  for (const auto& c : components_) s += c;
  return s;
}

double OperatorTuple::norm_sum() const {
  double s = 0.0;
  for (const auto& c : components_) s += fro_norm(c);
  return s;
}

namespace {

void require_same_matrix_dim(const OperatorTuple& a, const OperatorTuple& b, const char* where) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << where << ": matrix dimension mismatch " << a.dim() << " vs " << b.dim();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double commutator_residual(const OperatorTuple& t) {
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      worst = std::max(worst, fro_norm(t[i] * t[j] - t[j] * t[i]));
    }
  }
  return worst;
}

double commutator_residual(const OperatorTuple& s, const OperatorTuple& t) {
  require_same_matrix_dim(s, t, "commutator_residual");
  double worst = 0.0;
  for (const auto& a : s) {
    for (const auto& b : t) worst = std::max(worst, fro_norm(a * b - b * a));
  }
  return worst;
}

bool commutes_within(const OperatorTuple& t, const Tolerance& tol) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const double scale = fro_norm(t[i]) * fro_norm(t[j]);
      if (!is_zero(t[i] * t[j] - t[j] * t[i], tol, scale)) return false;
    }
  }
  return true;
}

bool commutes_cross(const OperatorTuple& s, const OperatorTuple& t, const Tolerance& tol) {
  require_same_matrix_dim(s, t, "commutes_cross");
  for (const auto& a : s) {
    for (const auto& b : t) {
      if (!is_zero(a * b - b * a, tol, fro_norm(a) * fro_norm(b))) return false;
    }
  }
  return true;
}

OperatorTuple sum_tuple(const OperatorTuple& a, const OperatorTuple& n) {
  if (a.size() != n.size()) {
    throw std::invalid_argument("sum_tuple: tuple lengths differ (" + std::to_string(a.size()) +
                                " vs " + std::to_string(n.size()) + ")");
  }
  require_same_matrix_dim(a, n, "sum_tuple");
  std::vector<CMatrix> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + n[i]);
  return OperatorTuple(std::move(out));
}

OperatorTuple product_tuple(const OperatorTuple& s, const OperatorTuple& a) {
  require_same_matrix_dim(s, a, "product_tuple");
  std::vector<CMatrix> out;
  out.reserve(s.size() * a.size());
  for (const auto& sj : s) {
    for (const auto& ai : a) out.push_back(sj * ai);
  }
  return OperatorTuple(std::move(out));
}

OperatorTuple power_tuple(const OperatorTuple& a, unsigned t, PowerConvention conv) {
  if (t == 0) throw std::invalid_argument("power_tuple: t must be >= 1");
  if (conv == PowerConvention::componentwise) {
    std::vector<CMatrix> out;
    for (const auto& c : a) out.push_back(power(c, t));
    return OperatorTuple(std::move(out));
  }
  // Words of length t, built one letter at a time; appending letters in index
  // order keeps the list lexicographic.
  std::vector<CMatrix> words(a.begin(), a.end());
  for (unsigned len = 1; len < t; ++len) {
    std::vector<CMatrix> next;
    next.reserve(words.size() * a.size());
    for (const auto& w : words) {
      for (const auto& c : a) next.push_back(w * c);
    }
    words = std::move(next);
  }
  return OperatorTuple(std::move(words));
}

OperatorTuple inverse_tuple(const OperatorTuple& a) {
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    try {
      out.push_back(inverse(a[i]));
    } catch (const SingularMatrixError& e) {
      throw SingularMatrixError("inverse_tuple: component " + std::to_string(i) + " is singular",
                                e.condition_estimate());
    }
  }
  return OperatorTuple(std::move(out));
}

OperatorTuple adjoint_tuple(const OperatorTuple& a) {
  std::vector<CMatrix> out;
  for (const auto& c : a) out.push_back(c.adjoint());
  return OperatorTuple(std::move(out));
}

OperatorTuple conj_tuple(const OperatorTuple& a) {
  std::vector<CMatrix> out;
  for (const auto& c : a) out.push_back(c.conjugate());
  return OperatorTuple(std::move(out));
}

OperatorTuple scalar_tuple(Complex c, std::size_t d, Eigen::Index n) {
  if (d == 0) throw std::invalid_argument("scalar_tuple: d must be >= 1");
  return OperatorTuple(std::vector<CMatrix>(d, c * identity(n)));
}

OperatorTuple tensor_tuple(const OperatorTuple& a, const OperatorTuple& b) {
  std::vector<CMatrix> out;
  out.reserve(a.size() * b.size());
  for (const auto& ai : a) {
    for (const auto& bj : b) out.push_back(kron(ai, bj));
  }
  return OperatorTuple(std::move(out));
}

OperatorTuple mix_by_unitary(const CMatrix& u, const OperatorTuple& t, const Tolerance& tol) {
  const auto d = static_cast<Eigen::Index>(t.size());
  if (u.rows() != d || u.cols() != d) {
    throw std::invalid_argument("mix_by_unitary: U must be " + std::to_string(d) + "x" +
                                std::to_string(d));
  }
  const double residual = fro_norm(u.adjoint() * u - identity(d));
  if (!(residual <= tol.threshold(static_cast<double>(d)))) {
    std::ostringstream os;
    os << "mix_by_unitary: U is not unitary (||U*U - I||_F = " << residual << ")";
    throw std::invalid_argument(os.str());
  }
  std::vector<CMatrix> out;
  for (Eigen::Index j = 0; j < d; ++j) {
    CMatrix s = zero(t.dim());
    for (Eigen::Index i = 0; i < d; ++i) s += u(j, i) * t[static_cast<std::size_t>(i)];
    out.push_back(std::move(s));
  }
  return OperatorTuple(std::move(out));
}

CMatrix monomial(const OperatorTuple& t, const std::vector<unsigned>& alpha) {
  if (alpha.size() != t.size()) throw std::invalid_argument("monomial: length mismatch");
  CMatrix out = identity(t.dim());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (alpha[i]) out = out * power(t[i], alpha[i]);
  }
  return out;
}

std::optional<unsigned> nilpotency_order(const OperatorTuple& n, unsigned max_order,
                                         const Tolerance& tol, Strictness strictness) {
  if (max_order == 0) throw std::invalid_argument("nilpotency_order: max_order must be >= 1");
  if (strictness == Strictness::strict && !commutes_within(n, tol)) {
    throw std::invalid_argument("nilpotency_order: tuple does not commute");
  }
  std::vector<double> norms;
  for (const auto& c : n) norms.push_back(fro_norm(c));
  for (unsigned order = 1; order <= max_order; ++order) {
    bool all_vanish = true;
    for (const auto& alpha : compositions(n.size(), order)) {
      double scale = 1.0;
      for (std::size_t i = 0; i < n.size(); ++i) scale *= std::pow(norms[i], alpha[i]);
      if (!is_zero(monomial(n, alpha.entries()), tol, scale)) {
        all_vanish = false;
        break;
      }
    }
    if (all_vanish) return order;
  }
  return std::nullopt;
}

}  // namespace isotuple
