#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace isotuple {

/// Thrown when an exact integer coefficient does not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Multi-index alpha = (alpha_1, ..., alpha_d) of non-negative integers.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<unsigned> entries);
  MultiIndex(std::initializer_list<unsigned> entries);

  std::size_t size() const { return entries_.size(); }
  unsigned operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<unsigned>& entries() const { return entries_; }

  /// |alpha|
  unsigned order() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<unsigned> entries_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& alpha);

/// All multi-indices of length d with order exactly j, in lexicographically
/// descending order: (j,0,...,0) first, (0,...,0,j) last.
/// The result has binomial(j+d-1, d-1) elements.
std::vector<MultiIndex> compositions(std::size_t d, unsigned j);

// Exact coefficients. Every value representable in uint64_t is returned
// exactly; anything larger throws OverflowError. This covers all
// binomial(m, j) with m <= 62 and all multinomials j!/alpha! with j <= 20,
// and in practice m, j <= 30 with d <= 6.

/// C(m, j); zero when j > m.
std::uint64_t binomial(unsigned m, unsigned j);

/// j! / alpha!  (requires |alpha| == j)
std::uint64_t multinomial(unsigned j, const MultiIndex& alpha);

}  // namespace isotuple
