#include "isotuple/generators.hpp"

#include "isotuple/classify.hpp"
#include "isotuple/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

namespace isotuple {

// --------------------------------------------------------------------------
// Rng

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

int Rng::integer(int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(engine_);
}

CMatrix Rng::gaussian(Eigen::Index n) {
  CMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = complex_normal();
  }
  return m;
}

CMatrix Rng::balanced(Eigen::Index n) {
  CMatrix m = gaussian(n);
  return m / m.norm();
}

CMatrix Rng::hermitian(Eigen::Index n) {
  const CMatrix g = gaussian(n);
  CMatrix h = (g + g.adjoint()) / 2.0;
  return h / op_norm_estimate(h);
}

namespace {

// Q from a QR factorization with the phases of R's diagonal folded back in.
CMatrix haar_from(const CMatrix& g) {
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace

CMatrix Rng::unitary(Eigen::Index n) { return haar_from(gaussian(n)); }

CMatrix Rng::orthogonal(Eigen::Index n) {
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal();
  }
  return haar_from(g);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// --------------------------------------------------------------------------
// Deterministic factories

CMatrix poly_in(const CMatrix& m, const std::vector<Complex>& coeffs) {
  require_square(m, "poly_in");
  CMatrix out = zero(m.rows());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    out = out * m;
    out.diagonal().array() += *it;
  }
  return out;
}

CMatrix shift(Eigen::Index n) { return embedded_shift(n, n); }

CMatrix embedded_shift(Eigen::Index n, Eigen::Index r) {
  if (n < 1 || r < 0 || r > n) throw std::invalid_argument("embedded_shift: need 0 <= r <= n, n >= 1");
  CMatrix s = zero(n);
  for (Eigen::Index i = 0; i + 1 < r; ++i) s(i, i + 1) = 1.0;
  return s;
}

OperatorTuple commuting_from_seed(const CMatrix& seed_matrix,
                                  const std::vector<std::vector<Complex>>& polys) {
  if (polys.empty()) throw std::invalid_argument("commuting_from_seed: need d >= 1 polynomials");
  std::vector<CMatrix> comps;
  comps.reserve(polys.size());
  for (const auto& p : polys) comps.push_back(poly_in(seed_matrix, p));
  return OperatorTuple(std::move(comps));
}

namespace {

constexpr int kMaxRetries = 16;

// Zero-constant-term random polynomial of degree <= max_degree.
std::vector<Complex> nil_poly(Rng& rng, unsigned max_degree, double weight) {
  std::vector<Complex> c(max_degree + 1, Complex{0.0, 0.0});
  for (unsigned k = 1; k <= max_degree; ++k) c[k] = weight * rng.complex_normal();
  return c;
}

OperatorTuple nilpotent_from(Rng& rng, const CMatrix& seed, std::size_t d, unsigned order) {
  std::vector<std::vector<Complex>> polys;
  for (std::size_t i = 0; i < d; ++i) {
    polys.push_back(order > 1 ? nil_poly(rng, order - 1, 0.5) : std::vector<Complex>{0.0});
  }
  if (order > 1) {
    // At least one linear coefficient bounded away from zero keeps the order exact.
    Complex& c = polys[rng.integer(0, static_cast<int>(d) - 1)][1];
    if (std::abs(c) < 0.3) c = c == Complex{0.0, 0.0} ? Complex{0.5, 0.0} : 0.5 * c / std::abs(c);
  }
  return commuting_from_seed(seed, polys);
}

}  // namespace

OperatorTuple nilpotent_commuting(Eigen::Index n, std::size_t d, unsigned target_order,
                                  std::uint64_t rng_seed) {
  if (n < 1 || d < 1 || target_order < 1) {
    throw std::invalid_argument("nilpotent_commuting: n, d and target_order must be >= 1");
  }
  if (static_cast<Eigen::Index>(target_order) > n) {
    std::ostringstream os;
    os << "nilpotent_commuting: order " << target_order << " unachievable at dimension " << n;
    throw std::invalid_argument(os.str());
  }
  Rng rng(rng_seed);
  const CMatrix seed = embedded_shift(n, target_order);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    OperatorTuple t = nilpotent_from(rng, seed, d, target_order);
    if (nilpotency_order(t, target_order) == target_order) return t;
  }
  throw GenerationFailure("nilpotent_commuting: post-validation failed after retries");
}

namespace {

CMatrix jordan(Complex lambda, Eigen::Index k) {
  if (k < 1) throw std::invalid_argument("jordan: k must be >= 1");
  CMatrix t = shift(k);
  t.diagonal().setConstant(lambda);
  return t;
}

// Minimal degree 2k-1 at X = I for the pair (T*, T). Checked only while it
// fits the default profile length.
void validate_jordan(const CMatrix& t, Eigen::Index k, bool isometric, const char* where) {
  const unsigned expected = static_cast<unsigned>(2 * k - 1);
  if (expected > kDefaultKMax) return;
  const OperatorTuple tt({t});
  const auto p = defect_profile(adjoint_tuple(tt), tt, identity(k), expected);
  const auto got = isometric ? p.min_isometry_degree : p.min_symmetry_degree;
  if (got != expected) {
    std::ostringstream os;
    os << where << ": post-validation found degree "
       << (got ? std::to_string(*got) : std::string("none")) << ", expected " << expected;
    throw GenerationFailure(os.str());
  }
}

}  // namespace

CMatrix jordan_symmetric(double lambda, Eigen::Index k) {
  if (!std::isfinite(lambda)) throw std::invalid_argument("jordan_symmetric: lambda must be finite");
  CMatrix t = jordan(lambda, k);
  validate_jordan(t, k, false, "jordan_symmetric");
  return t;
}

CMatrix jordan_isometric(Complex lambda, Eigen::Index k) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) {
    throw std::invalid_argument("jordan_isometric: |lambda| must be 1");
  }
  CMatrix t = jordan(lambda, k);
  validate_jordan(t, k, true, "jordan_isometric");
  return t;
}

SquaresExample paper_example_squares() {
  const CMatrix c = identity(2) / std::numbers::sqrt2;
  return {OperatorTuple({c, c}), OperatorTuple({c, c})};
}

MixingExample paper_example_mixing() {
  const Complex i{0.0, 1.0};
  MixingExample e;
  e.t = CMatrix(2, 2);
  e.t << 1.0, 1.0, 0.0, 1.0;
  e.a0 = CMatrix(2, 2);
  e.a0 << 0.0, 0.0, 0.0, 1.0;
  e.u = CMatrix(2, 2);
  e.u << 0.0, 1.0, i, 0.0;
  e.s = e.u * e.t;
  return e;
}

CMatrix conjugation_apply(const CMatrix& x) { return x.conjugate(); }

// --------------------------------------------------------------------------
// Bundle

const OperatorTuple& Bundle::tuple(const std::string& name) const {
  auto it = tuples.find(name);
  if (it == tuples.end()) throw std::invalid_argument("bundle has no tuple '" + name + "'");
  return it->second;
}

const CMatrix& Bundle::matrix(const std::string& name) const {
  auto it = matrices.find(name);
  if (it == matrices.end()) throw std::invalid_argument("bundle has no matrix '" + name + "'");
  return it->second;
}

int Bundle::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) throw std::invalid_argument("bundle has no parameter '" + name + "'");
  return it->second;
}

double Bundle::max_residual() const {
  double worst = 0.0;
  for (const auto& [name, r] : residuals) worst = std::max(worst, r);
  return worst;
}

const std::vector<std::string>& instance_profiles() {
  static const std::vector<std::string> ids{"pro01",  "pro02", "pro03",  "pro04", "pro5",
                                            "thm05",  "cor05", "cor050", "thm06", "cor06",
                                            "cor061", "cor062", "thm07", "ex00-golden"};
  return ids;
}

// --------------------------------------------------------------------------
// Random families

namespace {

enum class Kind { isometric, symmetric, both };

struct Scalars {
  std::vector<Complex> a;
  std::vector<Complex> b;
};

// a, b in C^d with sum a_i b_i = 1 (isometric), sum a_i = sum b_i
// (symmetric), or both.
Scalars draw_scalars(Rng& rng, std::size_t d, Kind kind) {
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Scalars s;
    for (std::size_t i = 0; i < d; ++i) {
      s.a.push_back(w * rng.complex_normal());
      s.b.push_back(w * rng.complex_normal());
    }
    if (kind == Kind::isometric) {
      Complex dot{0.0, 0.0};
      for (std::size_t i = 0; i < d; ++i) dot += s.a[i] * s.b[i];
      if (std::abs(dot) < 0.3) continue;
      for (auto& b : s.b) b /= dot;
      return s;
    }
    if (kind == Kind::symmetric) {
      Complex gap{0.0, 0.0};
      for (std::size_t i = 0; i < d; ++i) gap += s.a[i] - s.b[i];
      for (auto& b : s.b) b += gap / static_cast<double>(d);
      return s;
    }
    if (d == 1) {
      const double sign = rng.coin() ? 1.0 : -1.0;
      return {{sign}, {sign}};
    }
    // Least-change correction of b onto {sum a_i b_i = 1, sum b_i = sum a_i}.
    Eigen::MatrixXcd m(2, static_cast<Eigen::Index>(d));
    Eigen::VectorXcd bv(static_cast<Eigen::Index>(d));
    Complex asum{0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i) {
      m(0, i) = s.a[i];
      m(1, i) = 1.0;
      bv(i) = s.b[i];
      asum += s.a[i];
    }
    const Eigen::MatrixXcd gram = m * m.adjoint();
    if (condition_number(gram) > 1e4) continue;
    Eigen::VectorXcd rhs(2);
    rhs << 1.0, asum;
    bv += m.adjoint() * gram.ldlt().solve(rhs - m * bv);
    for (std::size_t i = 0; i < d; ++i) s.b[i] = bv(i);
    return s;
  }
  throw GenerationFailure("draw_scalars: degenerate draws");
}

// A_i = a_i I + P_i(left_seed), B_i = b_i I + Q_i(right_seed), P_i, Q_i without
// constant term. Any X satisfies the identity selected by `kind` at degree
// ord(left_seed) + ord(right_seed) - 1.
std::pair<OperatorTuple, OperatorTuple> scalar_nilpotent_pair(Rng& rng, std::size_t d, Kind kind,
                                                              const CMatrix& left_seed,
                                                              const CMatrix& right_seed) {
  const Scalars s = draw_scalars(rng, d, kind);
  const auto deg = static_cast<unsigned>(std::max<Eigen::Index>(left_seed.rows() - 1, 1));
  std::vector<CMatrix> a;
  std::vector<CMatrix> b;
  for (std::size_t i = 0; i < d; ++i) {
    auto p = nil_poly(rng, deg, 0.5);
    auto q = nil_poly(rng, deg, 0.5);
    p[0] = s.a[i];
    q[0] = s.b[i];
    a.push_back(poly_in(left_seed, p));
    b.push_back(poly_in(right_seed, q));
  }
  return {OperatorTuple(std::move(a)), OperatorTuple(std::move(b))};
}

// Q (shift of size r, embedded in n) Q*, Q Haar unitary; nilpotent of order r.
CMatrix rotated_shift(Rng& rng, Eigen::Index n, Eigen::Index r) {
  const CMatrix q = rng.unitary(n);
  return q * embedded_shift(n, r) * q.adjoint();
}

double rel_defect(const CMatrix& defect, double scale) {
  return scale > 0.0 ? fro_norm(defect) / scale : fro_norm(defect);
}

// max ||[a, b]||_F / (||a||_F ||b||_F) over all pairs (a in s, b in t).
double rel_commutator(const OperatorTuple& s, const OperatorTuple& t) {
  double worst = 0.0;
  for (const auto& a : s) {
    for (const auto& b : t) {
      const double denom = fro_norm(a) * fro_norm(b);
      if (denom > 0.0) worst = std::max(worst, fro_norm(a * b - b * a) / denom);
    }
  }
  return worst;
}

double rel_isosym(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, unsigned m,
                  unsigned n) {
  return rel_defect(isosym_defect(a, b, x, m, n), defect_scale(a, b, x, m, n));
}

unsigned min_degree(const OperatorTuple& a, const OperatorTuple& b, const CMatrix& x, Kind kind,
                    unsigned k_max) {
  const auto p = defect_profile(a, b, x, k_max);
  const auto deg = kind == Kind::symmetric ? p.min_symmetry_degree : p.min_isometry_degree;
  if (!deg) throw GenerationFailure("generator: constructed pair has no degree <= k_max");
  return *deg;
}

OperatorTuple kron_left(const OperatorTuple& t, const CMatrix& right) {
  std::vector<CMatrix> out;
  for (const auto& c : t) out.push_back(kron(c, right));
  return OperatorTuple(std::move(out));
}

Kind iso_or_sym(Rng& rng) { return rng.coin() ? Kind::isometric : Kind::symmetric; }

constexpr double kResidualLimit = 1e-10;

void require_valid(const Bundle& b) {
  if (b.max_residual() > kResidualLimit) {
    std::ostringstream os;
    os << b.profile << ": hypothesis residual " << b.max_residual() << " exceeds "
       << kResidualLimit;
    throw GenerationFailure(os.str());
  }
}

// ---- Nilpotent perturbations and their special cases: block structure C^k (x) C^p.

struct BlockBase {
  Eigen::Index k = 1;
  Eigen::Index p = 1;
  unsigned n1 = 1;
  unsigned n2 = 1;
  OperatorTuple nil1;
  OperatorTuple nil2;
};

BlockBase block_base(Rng& rng, std::size_t d) {
  const auto n1 = static_cast<unsigned>(rng.integer(1, 3));
  const auto n2 = static_cast<unsigned>(rng.integer(1, 3));
  const Eigen::Index k = rng.integer(1, 2);
  Eigen::Index p = std::max<Eigen::Index>(std::max(n1, n2), 1);
  if (k * (p + 1) <= 6 && rng.coin()) ++p;
  const CMatrix ik = identity(k);
  auto nil1 = nilpotent_commuting(p, d, n1, mix_seed(rng.integer(0, 1 << 30), 1));
  auto nil2 = nilpotent_commuting(p, d, n2, mix_seed(rng.integer(0, 1 << 30), 2));
  // Conjugate the nilpotent factor by a unitary so the seed is not triangular.
  const CMatrix q = rng.unitary(p);
  auto rotate = [&](const OperatorTuple& t) {
    std::vector<CMatrix> out;
    for (const auto& c : t) out.push_back(kron(ik, q * c * q.adjoint()));
    return OperatorTuple(std::move(out));
  };
  return {k, p, n1, n2, rotate(nil1), rotate(nil2)};
}

// Pair on the C^k factor: scalars plus a multiple of the 2 x 2 shift on one side.
std::pair<OperatorTuple, OperatorTuple> block_pair(Rng& rng, std::size_t d, Kind kind,
                                                   Eigen::Index k, Eigen::Index p) {
  const CMatrix nil = k == 2 && rng.coin() ? shift(2) : zero(k);
  const bool left = rng.coin();
  auto [dd, ee] = left ? scalar_nilpotent_pair(rng, d, kind, nil, zero(k))
                       : scalar_nilpotent_pair(rng, d, kind, zero(k), nil);
  const CMatrix ip = identity(p);
  return {kron_left(dd, ip), kron_left(ee, ip)};
}

Bundle make_thm05(Rng& rng) {
  Bundle out;
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  auto base = block_base(rng, d);
  const Kind kind = iso_or_sym(rng);
  auto [a, b] = block_pair(rng, d, kind, base.k, base.p);
  const CMatrix x = rng.balanced(base.k * base.p);
  unsigned m1 = static_cast<unsigned>(rng.integer(1, 2));
  unsigned m2 = static_cast<unsigned>(rng.integer(1, 2));
  if (kind == Kind::isometric) m1 = min_degree(a, b, x, kind, 2);
  if (kind == Kind::symmetric) m2 = min_degree(a, b, x, kind, 2);
  out.params = {{"m1", static_cast<int>(m1)}, {"m2", static_cast<int>(m2)},
                {"n1", static_cast<int>(base.n1)}, {"n2", static_cast<int>(base.n2)}};
  out.residuals = {{"isosym", rel_isosym(a, b, x, m1, m2)},
                   {"commute_A", rel_commutator(a, a)},
                   {"commute_B", rel_commutator(b, b)},
                   {"commute_N1", rel_commutator(base.nil1, base.nil1)},
                   {"commute_N2", rel_commutator(base.nil2, base.nil2)},
                   {"cross_A_N1", rel_commutator(a, base.nil1)},
                   {"cross_B_N2", rel_commutator(b, base.nil2)}};
  out.tuples.emplace("A", a);
  out.tuples.emplace("B", b);
  out.tuples.emplace("N1", base.nil1);
  out.tuples.emplace("N2", base.nil2);
  out.matrices.emplace("X", x);
  return out;
}

Bundle make_cor05(Rng& rng) {
  Bundle out;
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  auto base = block_base(rng, d);
  // Both pairs are polynomials in the same C^k shift, so [A1, A2] = [B1, B2] = 0.
  const CMatrix nil = base.k == 2 ? shift(2) : zero(1);
  const CMatrix ip = identity(base.p);
  const CMatrix left = rng.coin() ? nil : zero(base.k);
  auto [d1, e1] = scalar_nilpotent_pair(rng, d, Kind::isometric, left, zero(base.k));
  auto [d2, e2] = scalar_nilpotent_pair(rng, d, Kind::symmetric, left, zero(base.k));
  const OperatorTuple a1 = kron_left(d1, ip), b1 = kron_left(e1, ip);
  const OperatorTuple a2 = kron_left(d2, ip), b2 = kron_left(e2, ip);
  const CMatrix x = rng.balanced(base.k * base.p);
  const unsigned m1 = min_degree(a1, b1, x, Kind::isometric, 2);
  const unsigned m2 = min_degree(a2, b2, x, Kind::symmetric, 2);
  out.params = {{"m1", static_cast<int>(m1)}, {"m2", static_cast<int>(m2)},
                {"n1", static_cast<int>(base.n1)}, {"n2", static_cast<int>(base.n2)}};
  out.residuals = {
      {"triangle_A1B1", rel_defect(triangle(a1, b1, x, m1), defect_scale(a1, b1, x, m1))},
      {"delta_A2B2", rel_defect(delta(a2, b2, x, m2), defect_scale(a2, b2, x, 0, m2))},
      {"mixed", rel_defect(triangle(a1, b1, delta(a2, b2, x, m2), m1),
                           defect_scale(a1, b1, x, m1) * defect_scale(a2, b2, x, 0, m2) /
                               fro_norm(x))},
      {"cross_A1_A2", rel_commutator(a1, a2)},
      {"cross_B1_B2", rel_commutator(b1, b2)},
      {"cross_A1_N1", rel_commutator(a1, base.nil1)},
      {"cross_A2_N1", rel_commutator(a2, base.nil1)},
      {"cross_B1_N2", rel_commutator(b1, base.nil2)},
      {"cross_B2_N2", rel_commutator(b2, base.nil2)}};
  out.tuples.emplace("A1", a1);
  out.tuples.emplace("B1", b1);
  out.tuples.emplace("A2", a2);
  out.tuples.emplace("B2", b2);
  out.tuples.emplace("N1", base.nil1);
  out.tuples.emplace("N2", base.nil2);
  out.matrices.emplace("X", x);
  return out;
}

Bundle make_cor050(Rng& rng) {
  Bundle out;
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  const auto order = static_cast<unsigned>(rng.integer(1, 3));
  const Eigen::Index k = rng.integer(1, 2);
  const Eigen::Index p = std::max<Eigen::Index>(order, rng.integer(1, 3));
  const bool iso = rng.coin();
  // T_i = w_i D (x) I_p with D diagonal: unitary for the isometric case,
  // real for the symmetric case.
  CMatrix dmat = zero(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    dmat(i, i) = iso ? std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform())
                     : Complex{2.0 * rng.uniform() - 1.0, 0.0};
  }
  std::vector<Complex> w;
  double norm2 = 0.0;
  Complex wsum{0.0, 0.0};
  for (std::size_t i = 0; i < d; ++i) {
    w.push_back(rng.complex_normal());
    norm2 += std::norm(w.back());
    wsum += w.back();
  }
  if (iso) {
    for (auto& wi : w) wi /= std::sqrt(norm2);
  } else {
    const Complex phase = std::abs(wsum) > 0.0 ? std::conj(wsum) / std::abs(wsum) : 1.0;
    for (auto& wi : w) wi *= phase / std::sqrt(norm2);
  }
  std::vector<CMatrix> tc;
  for (const auto& wi : w) tc.push_back(kron(wi * dmat, identity(p)));
  const OperatorTuple t(std::move(tc));
  const OperatorTuple ts = adjoint_tuple(t);
  const CMatrix q = rng.unitary(p);
  auto nil = nilpotent_commuting(p, d, order, mix_seed(rng.integer(0, 1 << 30), 3));
  std::vector<CMatrix> nc;
  for (const auto& c : nil) nc.push_back(kron(identity(k), q * c * q.adjoint()));
  const OperatorTuple n(std::move(nc));
  // X commutes with D on the first factor.
  CMatrix xd = zero(k);
  for (Eigen::Index i = 0; i < k; ++i) xd(i, i) = rng.complex_normal();
  const CMatrix x = kron(xd, rng.balanced(p));
  unsigned m1 = static_cast<unsigned>(rng.integer(1, 2));
  unsigned m2 = static_cast<unsigned>(rng.integer(1, 2));
  if (iso) m1 = min_degree(ts, t, x, Kind::isometric, 2);
  if (!iso) m2 = min_degree(ts, t, x, Kind::symmetric, 2);
  out.params = {{"m1", static_cast<int>(m1)}, {"m2", static_cast<int>(m2)},
                {"n", static_cast<int>(order)}};
  out.residuals = {{"isosym", rel_isosym(ts, t, x, m1, m2)},
                   {"commute_T", rel_commutator(t, t)},
                   {"cross_T_N", rel_commutator(t, n)},
                   {"cross_Tstar_N", rel_commutator(ts, n)}};
  out.tuples.emplace("T", t);
  out.tuples.emplace("N", n);
  out.matrices.emplace("X", x);
  return out;
}

// ---- Product family: all four tuples are polynomials in one rotated shift.

struct ProductFamily {
  OperatorTuple a, b, s, t;
  CMatrix x;
  unsigned m, n, r, s_deg;
};

ProductFamily product_family(Rng& rng, Kind kind, std::size_t da, std::size_t ds) {
  const Eigen::Index dim = rng.integer(2, 4);
  const Eigen::Index order = rng.integer(1, std::min<Eigen::Index>(dim, 3));
  const CMatrix seed = rotated_shift(rng, dim, order);
  const CMatrix z = zero(dim);
  auto pick = [&]() -> std::pair<CMatrix, CMatrix> {
    switch (rng.integer(0, 3)) {
      case 0: return {seed, z};
      case 1: return {z, seed};
      case 2: return {seed, seed};
      default: return {z, z};
    }
  };
  const auto [la, ra] = pick();
  const auto [ls, rs] = pick();
  auto [a, b] = scalar_nilpotent_pair(rng, da, kind, la, ra);
  auto [s, t] = scalar_nilpotent_pair(rng, ds, kind, ls, rs);
  const CMatrix x = rng.balanced(dim);
  const unsigned k_max = 2 * static_cast<unsigned>(order);
  const unsigned dab = min_degree(a, b, x, kind, k_max);
  const unsigned dst = min_degree(s, t, x, kind, k_max);
  ProductFamily f{a, b, s, t, x, 0, 0, 0, 0};
  if (kind == Kind::isometric) {
    f.m = dab;
    f.r = dst;
    f.n = f.s_deg = static_cast<unsigned>(rng.integer(1, 2));
  } else {
    f.n = f.s_deg = std::max(dab, dst);
    f.m = static_cast<unsigned>(rng.integer(1, 2));
    f.r = static_cast<unsigned>(rng.integer(1, 2));
  }
  return f;
}

void product_residuals(Bundle& out, const ProductFamily& f) {
  const auto& [a, b, s, t, x, m, n, r, sd] = f;
  out.residuals = {{"AB_m_n", rel_isosym(a, b, x, m, n)},
                   {"ST_r_s", rel_isosym(s, t, x, r, sd)},
                   {"ST_r_n", rel_isosym(s, t, x, r, n)},
                   {"AB_m_s", rel_isosym(a, b, x, m, sd)},
                   {"commute_A", rel_commutator(a, a)},
                   {"commute_B", rel_commutator(b, b)},
                   {"commute_S", rel_commutator(s, s)},
                   {"commute_T", rel_commutator(t, t)},
                   {"cross_A_S", rel_commutator(a, s)},
                   {"cross_B_S", rel_commutator(b, s)},
                   {"cross_B_T", rel_commutator(b, t)}};
  out.tuples.emplace("A", a);
  out.tuples.emplace("B", b);
  out.tuples.emplace("S", s);
  out.tuples.emplace("T", t);
  out.matrices.emplace("X", x);
}

Bundle make_thm06(Rng& rng) {
  Bundle out;
  const Kind kind = iso_or_sym(rng);
  const auto f = product_family(rng, kind, rng.integer(1, 3), rng.integer(1, 3));
  out.params = {{"m", static_cast<int>(f.m)}, {"n", static_cast<int>(f.n)},
                {"r", static_cast<int>(f.r)}, {"s", static_cast<int>(f.s_deg)},
                {"family", kind == Kind::isometric ? 0 : 1}};
  product_residuals(out, f);
  return out;
}

// Product corollaries: variant 0 is the isometric implication, 1 the symmetric one.
Bundle make_cor06(Rng& rng, bool single_a) {
  Bundle out;
  const Kind kind = iso_or_sym(rng);
  const auto f = product_family(rng, kind, single_a ? 1 : rng.integer(1, 3), rng.integer(1, 3));
  const bool iso = kind == Kind::isometric;
  const unsigned first = iso ? f.m : f.n;
  const unsigned second = iso ? f.r : f.s_deg;
  const auto& [a, b, s, t, x, m, n, r, sd] = f;
  auto defect = [&](const OperatorTuple& p, const OperatorTuple& q, unsigned k) {
    return iso ? rel_defect(triangle(p, q, x, k), defect_scale(p, q, x, k))
               : rel_defect(delta(p, q, x, k), defect_scale(p, q, x, 0, k));
  };
  out.params = {{"m", static_cast<int>(first)},
                {"n", static_cast<int>(second)},
                {"variant", iso ? 0 : 1}};
  out.residuals = {{"AB", defect(a, b, first)},
                   {"ST", defect(s, t, second)},
                   {"commute_A", rel_commutator(a, a)},
                   {"commute_B", rel_commutator(b, b)},
                   {"commute_S", rel_commutator(s, s)},
                   {"commute_T", rel_commutator(t, t)},
                   {"cross_A_S", rel_commutator(a, s)},
                   {"cross_B_S", rel_commutator(b, s)},
                   {"cross_B_T", rel_commutator(b, t)}};
  out.tuples.emplace("A", a);
  out.tuples.emplace("B", b);
  out.tuples.emplace("S", s);
  out.tuples.emplace("T", t);
  out.matrices.emplace("X", x);
  return out;
}

// ---- Conjugation corollary: complex symmetric seeds.

CMatrix complex_symmetric_nilpotent(Rng& rng, Eigen::Index dim) {
  const Complex i{0.0, 1.0};
  CMatrix n2(2, 2);
  n2 << 0.5, 0.5 * i, 0.5 * i, -0.5;
  CMatrix n = n2;
  if (dim == 4) n = kron(n2, identity(2)) + kron(identity(2), n2);
  if (dim == 3) {
    n = zero(3);
    n.topLeftCorner(2, 2) = n2;
  }
  if (dim == 1) n = zero(1);
  const CMatrix q = rng.orthogonal(dim);
  return q * n * q.transpose();
}

Bundle make_cor061(Rng& rng) {
  Bundle out;
  const Eigen::Index dim = rng.integer(1, 4);
  const CMatrix seed = complex_symmetric_nilpotent(rng, dim);
  const bool iso = rng.coin();
  auto draw = [&](std::size_t d) {
    std::vector<Complex> s;
    for (std::size_t i = 0; i < d; ++i) s.push_back(rng.complex_normal() / std::sqrt(double(d)));
    if (iso) {
      // (S*, conj S) has scalar parts conj(s_i) on both sides; need sum conj(s_i)^2 = 1.
      Complex sq{0.0, 0.0};
      for (const auto& v : s) sq += v * v;
      const Complex root = std::sqrt(sq);
      for (auto& v : s) v /= root;
    }
    std::vector<CMatrix> comps;
    const bool active = rng.coin();
    for (const auto& v : s) {
      auto p = nil_poly(rng, static_cast<unsigned>(std::max<Eigen::Index>(dim - 1, 1)), 0.5);
      p[0] = v;
      if (!active) std::fill(p.begin() + 1, p.end(), Complex{0.0, 0.0});
      comps.push_back(poly_in(seed, p));
    }
    return OperatorTuple(std::move(comps));
  };
  const OperatorTuple s = draw(rng.integer(1, 3));
  const OperatorTuple t = draw(rng.integer(1, 3));
  const CMatrix x = rng.balanced(dim);
  const OperatorTuple ss = adjoint_tuple(s), cs = conj_tuple(s);
  const OperatorTuple ts = adjoint_tuple(t), ct = conj_tuple(t);
  const Kind kind = iso ? Kind::isometric : Kind::symmetric;
  const unsigned k_max = 2 * static_cast<unsigned>(dim);
  const unsigned m = min_degree(ss, cs, x, kind, k_max);
  const unsigned n = min_degree(ts, ct, x, kind, k_max);
  out.params = {{"m", static_cast<int>(m)}, {"n", static_cast<int>(n)}, {"variant", iso ? 0 : 1}};
  out.residuals = {{"commute_S", rel_commutator(s, s)},
                   {"commute_T", rel_commutator(t, t)},
                   {"cross_S_T", rel_commutator(s, t)},
                   {"cross_Sstar_CTC", rel_commutator(ss, ct)}};
  out.tuples.emplace("S", s);
  out.tuples.emplace("T", t);
  out.matrices.emplace("X", x);
  return out;
}

// ---- Tensor products: pairs on C^k checked at X = I.

std::pair<OperatorTuple, OperatorTuple> identity_pair(Rng& rng, Kind kind, Eigen::Index k) {
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  if (kind != Kind::both && rng.coin()) {
    // (conj(w_i) J*, w_i J) with J a rotated Jordan block: the single-operator
    // (I, 2k-1) identity lifted to a weighted tuple.
    const Eigen::Index size = rng.integer(1, k);
    const Complex lambda = kind == Kind::isometric
                               ? std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform())
                               : Complex{2.0 * rng.uniform() - 1.0, 0.0};
    CMatrix j = zero(k);
    j.diagonal().setConstant(lambda);
    j += embedded_shift(k, size);
    const CMatrix q = rng.unitary(k);
    j = q * j * q.adjoint();
    std::vector<Complex> w;
    double norm2 = 0.0;
    Complex wsum{0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i) {
      w.push_back(rng.complex_normal());
      norm2 += std::norm(w.back());
      wsum += w.back();
    }
    const Complex phase = kind == Kind::symmetric && std::abs(wsum) > 0.0
                              ? std::conj(wsum) / std::abs(wsum)
                              : Complex{1.0, 0.0};
    std::vector<CMatrix> a;
    std::vector<CMatrix> b;
    for (auto wi : w) {
      wi *= phase / std::sqrt(norm2);
      a.push_back(std::conj(wi) * j.adjoint());
      b.push_back(wi * j);
    }
    return {OperatorTuple(std::move(a)), OperatorTuple(std::move(b))};
  }
  const Eigen::Index order = rng.integer(1, k);
  const CMatrix seed = rotated_shift(rng, k, order);
  const CMatrix z = zero(k);
  return rng.coin() ? scalar_nilpotent_pair(rng, d, kind, seed, z)
                    : scalar_nilpotent_pair(rng, d, kind, z, seed);
}

Bundle make_thm07(Rng& rng) {
  Bundle out;
  const Eigen::Index ka = rng.integer(1, 3);
  const Eigen::Index ks = rng.integer(1, 3);
  const CMatrix ia = identity(ka), is = identity(ks);
  const int variant = rng.integer(0, 2);  // 0: (i) isometric, 1: (i) symmetric, 2: (ii)
  if (variant < 2) {
    const Kind kind = variant == 0 ? Kind::isometric : Kind::symmetric;
    auto [a, b] = identity_pair(rng, kind, ka);
    auto [s, t] = identity_pair(rng, kind, ks);
    const unsigned m = min_degree(a, b, ia, kind, 6);
    const unsigned n = min_degree(s, t, is, kind, 6);
    out.params = {{"m", static_cast<int>(m)}, {"n", static_cast<int>(n)},
                  {"r", 0}, {"s", 0}, {"variant", variant}};
    out.residuals = {{"AB", kind == Kind::isometric
                                ? rel_defect(triangle(a, b, ia, m), defect_scale(a, b, ia, m))
                                : rel_defect(delta(a, b, ia, m), defect_scale(a, b, ia, 0, m))},
                     {"ST", kind == Kind::isometric
                                ? rel_defect(triangle(s, t, is, n), defect_scale(s, t, is, n))
                                : rel_defect(delta(s, t, is, n), defect_scale(s, t, is, 0, n))}};
    out.tuples.emplace("A", a);
    out.tuples.emplace("B", b);
    out.tuples.emplace("S", s);
    out.tuples.emplace("T", t);
    return out;
  }
  const Kind kind = iso_or_sym(rng);
  auto [a, b] = identity_pair(rng, kind, ka);
  auto [s, t] = identity_pair(rng, Kind::both, ks);
  unsigned m = static_cast<unsigned>(rng.integer(1, 2));
  unsigned n = static_cast<unsigned>(rng.integer(1, 2));
  if (kind == Kind::isometric) m = min_degree(a, b, ia, kind, 6);
  if (kind == Kind::symmetric) n = min_degree(a, b, ia, kind, 6);
  const unsigned r = min_degree(s, t, is, Kind::isometric, 6);
  const unsigned sdeg = min_degree(s, t, is, Kind::symmetric, 6);
  out.params = {{"m", static_cast<int>(m)}, {"n", static_cast<int>(n)},
                {"r", static_cast<int>(r)}, {"s", static_cast<int>(sdeg)}, {"variant", 2}};
  out.residuals = {{"AB_m_n", rel_isosym(a, b, ia, m, n)},
                   {"ST_r", rel_defect(triangle(s, t, is, r), defect_scale(s, t, is, r))},
                   {"ST_s", rel_defect(delta(s, t, is, sdeg), defect_scale(s, t, is, 0, sdeg))}};
  out.tuples.emplace("A", a);
  out.tuples.emplace("B", b);
  out.tuples.emplace("S", s);
  out.tuples.emplace("T", t);
  return out;
}

// ---- Single-tuple statements.

Bundle make_pro01(Rng& rng) {
  Bundle out;
  const int family = rng.integer(0, 2);
  OperatorTuple a({identity(1)});
  OperatorTuple b({identity(1)});
  CMatrix x;
  if (family == 0) {
    // Scalar-plus-nilpotent pair, arbitrary X.
    const Eigen::Index dim = rng.integer(1, 4);
    const CMatrix seed = rotated_shift(rng, dim, rng.integer(1, std::min<Eigen::Index>(dim, 2)));
    std::tie(a, b) = scalar_nilpotent_pair(rng, rng.integer(1, 3), Kind::isometric, seed,
                                           rng.coin() ? seed : zero(dim));
    x = rng.balanced(dim);
  } else if (family == 1) {
    // Rotated Jordan block with unimodular eigenvalue, (T*, T) at X = I.
    const Eigen::Index k = rng.integer(1, 3);
    const CMatrix q = rng.unitary(k);
    const CMatrix j = jordan_isometric(std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()), k);
    const CMatrix tj = q * j * q.adjoint();
    a = OperatorTuple({tj.adjoint()});
    b = OperatorTuple({tj});
    x = identity(k);
  } else {
    // Spherical isometry: T_i = w_i U with sum |w_i|^2 = 1.
    const Eigen::Index dim = rng.integer(1, 4);
    const CMatrix u = rng.unitary(dim);
    const auto d = static_cast<std::size_t>(rng.integer(1, 3));
    std::vector<Complex> w;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      w.push_back(rng.complex_normal());
      norm2 += std::norm(w.back());
    }
    std::vector<CMatrix> ac;
    std::vector<CMatrix> bc;
    for (auto wi : w) {
      wi /= std::sqrt(norm2);
      ac.push_back(std::conj(wi) * u.adjoint());
      bc.push_back(wi * u);
    }
    a = OperatorTuple(std::move(ac));
    b = OperatorTuple(std::move(bc));
    x = identity(dim);
  }
  const unsigned m = min_degree(a, b, x, Kind::isometric, 6);
  out.params = {{"m", static_cast<int>(m)}, {"family", family}};
  out.residuals = {{"triangle", rel_defect(triangle(a, b, x, m), defect_scale(a, b, x, m))}};
  out.tuples.emplace("A", a);
  out.tuples.emplace("B", b);
  out.matrices.emplace("X", x);
  return out;
}

Bundle make_pro02(Rng& rng) {
  Bundle out;
  // Members differ from the limit only in their nilpotent coefficients, so
  // every member satisfies the same identity exactly.
  const Eigen::Index dim = rng.integer(2, 3);
  const Eigen::Index order = rng.integer(2, dim);
  const CMatrix seed = rotated_shift(rng, dim, order);
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  const int kind_code = rng.integer(0, 2);  // 0 isometric, 1 symmetric, 2 both
  const Kind kind = kind_code == 0 ? Kind::isometric
                                   : (kind_code == 1 ? Kind::symmetric : Kind::both);
  const Scalars sc = draw_scalars(rng, d, kind);
  const auto deg = static_cast<unsigned>(dim - 1);
  std::vector<std::vector<Complex>> pa, pb, da, db;
  for (std::size_t i = 0; i < d; ++i) {
    pa.push_back(nil_poly(rng, deg, 0.5));
    pb.push_back(nil_poly(rng, deg, 0.5));
    da.push_back(nil_poly(rng, deg, 0.5));
    db.push_back(nil_poly(rng, deg, 0.5));
    pa.back()[0] = sc.a[i];
    pb.back()[0] = sc.b[i];
  }
  auto member = [&](double eps) {
    std::vector<std::vector<Complex>> qa = pa, qb = pb;
    for (std::size_t i = 0; i < d; ++i) {
      for (unsigned k = 1; k <= deg; ++k) {
        qa[i][k] += eps * da[i][k];
        qb[i][k] += eps * db[i][k];
      }
    }
    return std::make_pair(commuting_from_seed(seed, qa), commuting_from_seed(seed, qb));
  };
  const auto [a, b] = member(0.0);
  const CMatrix x = rng.balanced(dim);
  const unsigned k_max = 2 * static_cast<unsigned>(order);
  unsigned m1 = static_cast<unsigned>(rng.integer(1, 2));
  unsigned m2 = static_cast<unsigned>(rng.integer(1, 2));
  if (kind != Kind::symmetric) m1 = min_degree(a, b, x, Kind::isometric, k_max);
  if (kind != Kind::isometric) m2 = min_degree(a, b, x, Kind::symmetric, k_max);
  constexpr int kMembers = 16;
  double worst = 0.0;
  for (int k = 0; k < kMembers; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const auto [ak, bk] = member(eps);
    if (kind != Kind::symmetric) {
      worst = std::max(worst, rel_defect(triangle(ak, bk, x, m1), defect_scale(ak, bk, x, m1)));
    }
    if (kind != Kind::isometric) {
      worst = std::max(worst, rel_defect(delta(ak, bk, x, m2), defect_scale(ak, bk, x, 0, m2)));
    }
    out.tuples.emplace("A_" + std::to_string(k), ak);
    out.tuples.emplace("B_" + std::to_string(k), bk);
  }
  out.params = {{"m1", static_cast<int>(m1)}, {"m2", static_cast<int>(m2)},
                {"members", kMembers}, {"kind", kind_code}};
  out.residuals = {{"members", worst}};
  out.tuples.emplace("A", a);
  out.tuples.emplace("B", b);
  out.matrices.emplace("X", x);
  return out;
}

Bundle make_pro03(Rng& rng) {
  Bundle out;
  const auto d = static_cast<std::size_t>(rng.integer(2, 3));
  const Eigen::Index dim = rng.integer(2, 4);
  const CMatrix seed = rotated_shift(rng, dim, rng.integer(1, dim));
  const auto deg = static_cast<unsigned>(dim - 1);
  auto poly = [&](Complex c0) {
    auto p = nil_poly(rng, deg, 0.5);
    p[0] = c0;
    return poly_in(seed, p);
  };
  const bool part_b = rng.coin();
  const bool positive = rng.coin();
  const CMatrix x = poly(rng.complex_normal());
  std::vector<CMatrix> a;
  std::vector<CMatrix> b;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    if (!part_b) {
      // A_i X B_i = X: B_i = (a V)^{-1} with V an invertible polynomial.
      const Complex ai = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
      const CMatrix v = poly(1.0);
      a.push_back(ai * v);
      b.push_back(inverse(ai * v));
    } else {
      const CMatrix v = poly(rng.complex_normal());
      a.push_back(v);
      b.push_back(v);
    }
  }
  if (!part_b) {
    const double c = static_cast<double>(d) - 2.0;
    if (positive) {
      // (d-2) I + L_{A_d} R_{B_d} nilpotent on the polynomial algebra.
      if (d == 2) {
        a.push_back(poly(0.0));
        b.push_back(poly(rng.complex_normal()));
      } else {
        const Complex s = rng.complex_normal();
        a.push_back(poly(s));
        b.push_back(poly(-c / s));
      }
    } else {
      a.push_back(poly(rng.complex_normal()));
      b.push_back(poly(rng.complex_normal()));
    }
  } else {
    const Complex s = rng.complex_normal();
    a.push_back(poly(s));
    b.push_back(poly(positive ? s : s + 1.0));
  }
  const OperatorTuple at(std::move(a));
  const OperatorTuple bt(std::move(b));
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const OperatorTuple ai({at[i]});
    const OperatorTuple bi({bt[i]});
    worst = std::max(worst, part_b ? rel_defect(delta(ai, bi, x, 1), defect_scale(ai, bi, x, 0, 1))
                                   : rel_defect(triangle(ai, bi, x, 1), defect_scale(ai, bi, x, 1)));
  }
  out.params = {{"m", rng.integer(1, 4)}, {"part", part_b ? 1 : 0}, {"positive", positive ? 1 : 0}};
  out.residuals = {{"first_pairs", worst}};
  out.tuples.emplace("A", at);
  out.tuples.emplace("B", bt);
  out.matrices.emplace("X", x);
  return out;
}

// Coefficient lists p_i (degree <= deg) whose sum q has real coefficients.
// With `lambda` given, q'(lambda) is pushed to magnitude >= 0.5 so that
// q(lambda I + N) keeps the nilpotent order of N.
std::vector<std::vector<Complex>> real_sum_coeffs(Rng& rng, std::size_t d, unsigned deg,
                                                  std::optional<double> lambda) {
  std::vector<std::vector<Complex>> polys(d, std::vector<Complex>(deg + 1));
  for (unsigned k = 0; k <= deg; ++k) {
    double imag = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      polys[i][k] = rng.complex_normal() / std::sqrt(double(d) * (k + 1));
      imag += polys[i][k].imag();
    }
    polys[d - 1][k] -= Complex{0.0, imag};
  }
  if (lambda && deg >= 1) {
    double derivative = 0.0;
    for (unsigned k = 1; k <= deg; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < d; ++i) sum += polys[i][k].real();
      derivative += k * sum * std::pow(*lambda, k - 1);
    }
    if (std::abs(derivative) < 0.5) {
      const double target = derivative < 0.0 ? -0.5 : 0.5;
      polys[d - 1][1] += target - derivative;
    }
  }
  return polys;
}

Bundle make_pro04(Rng& rng) {
  Bundle out;
  const Eigen::Index dim = rng.integer(1, 4);
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  // One candidate in five is a rotated Jordan block, which violates the hypothesis.
  const bool control = rng.uniform() < 0.2 && dim > 1;
  CMatrix seed = rng.hermitian(dim);
  std::optional<double> lambda;
  if (control) {
    const CMatrix q = rng.unitary(dim);
    seed = q * (identity(dim) + shift(dim)) * q.adjoint();
    lambda = 1.0;
  }
  const OperatorTuple a = commuting_from_seed(seed, real_sum_coeffs(rng, d, 2, lambda));
  const OperatorTuple as = adjoint_tuple(a);
  const CMatrix id = identity(dim);
  out.params = {{"control", control ? 1 : 0}};
  out.residuals = {{"delta2", rel_defect(delta(as, a, id, 2), defect_scale(as, a, id, 0, 2))}};
  out.tuples.emplace("A", a);
  return out;
}

Bundle make_pro5(Rng& rng) {
  Bundle out;
  const unsigned m = rng.coin() ? 2 : 4;
  // Jordan size k gives symmetric degree exactly 2k - 1; one draw in five
  // exceeds m and serves as a hypothesis-violating control.
  const bool control = rng.uniform() < 0.2;
  const Eigen::Index k = control ? (m == 2 ? 2 : 3) : (m == 2 ? 1 : rng.integer(1, 2));
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  const double lambda = 2.0 * rng.uniform() - 1.0;
  CMatrix j = zero(k);
  j.diagonal().setConstant(lambda);
  j += shift(k);
  const CMatrix q = rng.unitary(k);
  const OperatorTuple a = commuting_from_seed(q * j * q.adjoint(), real_sum_coeffs(rng, d, 2, lambda));
  const OperatorTuple as = adjoint_tuple(a);
  const CMatrix id = identity(k);
  out.params = {{"m", static_cast<int>(m)}, {"control", control ? 1 : 0}};
  out.residuals = {{"delta_m", rel_defect(delta(as, a, id, m), defect_scale(as, a, id, 0, m))}};
  out.tuples.emplace("A", a);
  return out;
}

using Factory = std::function<Bundle(Rng&)>;

// The fixed mixing example; the seed is ignored.
Bundle make_ex00(Rng&) {
  const MixingExample e = paper_example_mixing();
  Bundle out;
  out.matrices = {{"T", e.t}, {"A0", e.a0}, {"U", e.u}, {"S", e.s}};
  return out;
}

const std::map<std::string, Factory>& factories() {
  static const std::map<std::string, Factory> f{
      {"pro01", make_pro01},
      {"pro02", make_pro02},
      {"pro03", make_pro03},
      {"pro04", make_pro04},
      {"pro5", make_pro5},
      {"thm05", make_thm05},
      {"cor05", make_cor05},
      {"cor050", make_cor050},
      {"thm06", make_thm06},
      {"cor06", [](Rng& r) { return make_cor06(r, false); }},
      {"cor062", [](Rng& r) { return make_cor06(r, true); }},
      {"cor061", make_cor061},
      {"thm07", make_thm07},
      {"ex00-golden", make_ex00}};
  return f;
}

// Profiles whose candidates may deliberately violate the hypothesis.
bool self_validating(const std::string& profile) {
  return profile == "pro03" || profile == "pro04" || profile == "pro5";
}

}  // namespace

Bundle random_instance(const std::string& profile, std::uint64_t rng_seed) {
  const auto& f = factories();
  auto it = f.find(profile == "pro02-family" ? std::string("pro02") : profile);
  if (it == f.end()) throw std::invalid_argument("random_instance: unknown profile '" + profile + "'");
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Rng rng(mix_seed(rng_seed, static_cast<std::uint64_t>(attempt)));
    try {
      Bundle b = it->second(rng);
      b.profile = it->first;
      b.seed = rng_seed;
      if (!self_validating(b.profile)) require_valid(b);
      return b;
    } catch (const GenerationFailure&) {
      continue;
    } catch (const SingularMatrixError&) {
      continue;
    }
  }
  throw GenerationFailure("random_instance(" + profile + "): retries exhausted");
}

}  // namespace isotuple
