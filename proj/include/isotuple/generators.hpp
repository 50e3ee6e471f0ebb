#pragma once

#include "isotuple/matrix.hpp"
#include "isotuple/tuple.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace isotuple {

class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seeded source of complex Gaussian entries. Same seed, same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Standard complex normal: E|z|^2 = 1.
  Complex complex_normal();
  int integer(int lo, int hi);  // inclusive
  bool coin() { return uniform() < 0.5; }

  CMatrix gaussian(Eigen::Index n);
  /// Gaussian matrix scaled to unit Frobenius norm.
  CMatrix balanced(Eigen::Index n);
  CMatrix hermitian(Eigen::Index n);
  CMatrix unitary(Eigen::Index n);
  /// Real orthogonal matrix (Haar-distributed up to column signs).
  CMatrix orthogonal(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// SplitMix64 step; used to derive per-trial seeds from a campaign seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// p(M) = c_0 I + c_1 M + c_2 M^2 + ...
CMatrix poly_in(const CMatrix& m, const std::vector<Complex>& coeffs);

/// Upper shift of size n (ones on the superdiagonal).
CMatrix shift(Eigen::Index n);
/// n x n matrix holding an r x r upper shift in its leading block, zero elsewhere.
CMatrix embedded_shift(Eigen::Index n, Eigen::Index r);

/// (p_1(M), ..., p_d(M)); exactly commuting up to rounding.
OperatorTuple commuting_from_seed(const CMatrix& seed_matrix,
                                  const std::vector<std::vector<Complex>>& polys);

/// Commuting d-tuple of n x n matrices with nilpotency_order == target_order:
/// zero-constant-term polynomials in an embedded shift of size target_order.
/// Throws invalid_argument when target_order > n, GenerationFailure when
/// post-validation keeps failing.
OperatorTuple nilpotent_commuting(Eigen::Index n, std::size_t d, unsigned target_order,
                                  std::uint64_t rng_seed);

/// lambda I + N_k with N_k the k x k Jordan nilpotent. Post-validated:
/// delta^{2k-1}_{T*,T}(I) = 0 and delta^{2k-2}_{T*,T}(I) != 0 (k <= 6).
CMatrix jordan_symmetric(double lambda, Eigen::Index k);
/// Same construction for |lambda| = 1, validated for triangle instead of delta.
CMatrix jordan_isometric(Complex lambda, Eigen::Index k);

struct SquaresExample {
  OperatorTuple a;  // (I/sqrt2, I/sqrt2) on C^2
  OperatorTuple b;
};
SquaresExample paper_example_squares();

struct MixingExample {
  CMatrix t;   // [[1,1],[0,1]]
  CMatrix a0;  // diag(0,1)
  CMatrix u;   // [[0,1],[i,0]]
  CMatrix s;   // U T
};
MixingExample paper_example_mixing();

/// C X C for the standard-basis conjugation, i.e. the entrywise conjugate.
CMatrix conjugation_apply(const CMatrix& x);

// --------------------------------------------------------------------------
// Theorem input bundles

/// Named inputs for one theorem trial plus its hypothesis residuals
/// (defect norms divided by their defect_scale, commutator norms divided by
/// the product of factor norms).
struct Bundle {
  std::string profile;
  std::uint64_t seed = 0;
  std::map<std::string, OperatorTuple> tuples;
  std::map<std::string, CMatrix> matrices;
  std::map<std::string, int> params;
  std::map<std::string, double> residuals;

  const OperatorTuple& tuple(const std::string& name) const;
  const CMatrix& matrix(const std::string& name) const;
  int param(const std::string& name) const;
  double max_residual() const;
};

/// Profiles accepted by random_instance.
const std::vector<std::string>& instance_profiles();

/// Seeded, reproducible input satisfying the named theorem's hypotheses by
/// construction. Profiles: pro01 pro02 pro03 pro04 pro5 thm05 cor05 cor050
/// thm06 cor06 cor061 cor062 thm07, plus ex00-golden (the fixed mixing
/// example, independent of the seed). pro04 and pro5 deliberately also emit
/// candidates whose hypothesis fails (the checker skips them).
Bundle random_instance(const std::string& profile, std::uint64_t rng_seed);

}  // namespace isotuple
