#pragma once

#include <compare>
#include <vector>

#include <gmpxx.h>

namespace fcs {

struct PivotChoice {
  unsigned p = 0;
  unsigned q = 1;

  unsigned branch_count() const { return q - p; }
  auto operator<=>(const PivotChoice&) const = default;
};

// μ_j = (j - p)/(q - p)
inline mpq_class pivot_exponent(const PivotChoice& pv, unsigned j) {
  mpq_class m(static_cast<long>(j) - static_cast<long>(pv.p), static_cast<long>(pv.q - pv.p));
  m.canonicalize();
  return m;
}

// Slots of the support other than the two pivots, ascending.
inline std::vector<unsigned> free_slots(const std::vector<unsigned>& support, const PivotChoice& pv) {
  std::vector<unsigned> out;
  for (unsigned j : support)
    if (j != pv.p && j != pv.q) out.push_back(j);
  return out;
}

}  // namespace fcs
