#include "isotuple/multiindex.hpp"

#include <limits>
#include <numeric>
#include <string>

namespace isotuple {

MultiIndex::MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("MultiIndex: length must be >= 1");
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> entries)
    : MultiIndex(std::vector<unsigned>(entries)) {}

unsigned MultiIndex::order() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0u);
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& alpha) {
  os << '(';
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) os << ',';
    os << alpha[i];
  }
  return os << ')';
}

namespace {

void fill_compositions(std::vector<unsigned>& prefix, std::size_t pos, unsigned remaining,
                       std::vector<MultiIndex>& out) {
  if (pos + 1 == prefix.size()) {
    prefix[pos] = remaining;
    out.emplace_back(prefix);
    return;
  }
  for (unsigned k = remaining + 1; k-- > 0;) {
    prefix[pos] = k;
    fill_compositions(prefix, pos + 1, remaining - k, out);
  }
}

}  // namespace

std::vector<MultiIndex> compositions(std::size_t d, unsigned j) {
  if (d == 0) throw std::invalid_argument("compositions: d must be >= 1");
  std::vector<MultiIndex> out;
  std::vector<unsigned> prefix(d, 0);
  fill_compositions(prefix, 0, j, out);
  return out;
}

std::uint64_t binomial(unsigned m, unsigned j) {
  if (j > m) return 0;
  j = std::min(j, m - j);
  // C(m, i) is increasing in i up to m/2, so intermediates never exceed the result.
  unsigned __int128 r = 1;
  for (unsigned i = 0; i < j; ++i) {
    r = r * (m - i) / (i + 1);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("binomial(" + std::to_string(m) + "," + std::to_string(j) +
                          ") exceeds 64-bit range");
    }
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t multinomial(unsigned j, const MultiIndex& alpha) {
  if (alpha.order() != j) {
    throw std::invalid_argument("multinomial: |alpha| = " + std::to_string(alpha.order()) +
                                " but j = " + std::to_string(j));
  }
  // j!/alpha! = prod_i C(alpha_1 + ... + alpha_i, alpha_i)
  unsigned __int128 r = 1;
  unsigned partial = 0;
  for (unsigned a : alpha.entries()) {
    partial += a;
    r *= binomial(partial, a);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("multinomial coefficient for j=" + std::to_string(j) +
                          " exceeds 64-bit range");
    }
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace isotuple
