#pragma once

#include <span>
#include <vector>

#include "ohz/function_model.hpp"
#include "ohz/types.hpp"

namespace ohz {

/// Confluent divided difference over a node multiset.
struct DividedDiffTable {
  std::vector<cplx> nodes;
  int order = 0;
  cplx value = 0.0;
};

/// Confluence tolerance: nodes closer than this share derivative data.
inline double confluence_tol(std::span<const cplx> nodes) {
  double m = 0.0;
  for (const cplx& z : nodes) m = std::max(m, std::abs(z));
  return 1e-7 * (1.0 + m);
}

/// D^k f over k+1 nodes. Polynomial-backed models use the exact complete
/// homogeneous expansion; everything else goes through the confluent Newton
/// table (derivatives are required inside confluent groups).
cplx divided_diff(const FunctionModel& f, std::span<const cplx> nodes);
DividedDiffTable divided_diff_table(const FunctionModel& f, std::span<const cplx> nodes);

/// Newton-table recursion with the confluent derivative fallback; exposed for
/// cross-validation against the exact path.
cplx divided_diff_newton(const FunctionModel& f, std::span<const cplx> nodes);

/// The explicit product formula sum_k f(l_k) prod_{j != k} (l_k - l_j)^{-1};
/// valid only for well-separated nodes. Test oracle.
cplx divided_diff_product(const FunctionModel& f, std::span<const cplx> nodes);

/// Complete homogeneous symmetric polynomial h_q of the given values.
cplx complete_homogeneous(int q, std::span<const cplx> values);

}  // namespace ohz
