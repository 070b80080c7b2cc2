#pragma once

#include <map>
#include <vector>

#include "ohz/operator_integrals.hpp"

namespace ohz {

/// Strictly increasing positive integers.
struct IndexSet {
  std::vector<int> elems;

  IndexSet() = default;
  IndexSet(std::initializer_list<int> xs);
  explicit IndexSet(std::vector<int> xs);

  int size() const { return static_cast<int>(elems.size()); }
  int min() const { return elems.front(); }
  int max() const { return elems.back(); }
  IndexSet translated(int shift) const;  // J + shift
  IndexSet with(int extra) const;        // J united with {extra}
  bool operator<(const IndexSet& o) const { return elems < o.elems; }
  bool operator==(const IndexSet& o) const { return elems == o.elems; }
  std::string to_string() const;
};

/// Number of partitions of j2 into nonempty (prefix, suffix) with
/// max prefix < min suffix and j1 == prefix united with (suffix - 1);
/// zero when j1 is not an ancestor of j2.
long long evidence_count(const IndexSet& j1, const IndexSet& j2);

/// Closed form (j_d - j_1)! / prod (j_s - j_{s-1})!, the gap multinomial.
/// Exact 64-bit arithmetic with overflow guards (max element <= 16 keeps
/// every value below 2^63).
long long kappa_closed(const IndexSet& j);

/// The recursion seeded by kappa_{{1}} = 1 over ancestors; memoized over all
/// index sets with max <= n_max.
class KappaTable {
 public:
  explicit KappaTable(int n_max);
  long long recursive(const IndexSet& j) const;
  int n_max() const { return n_max_; }
  /// Every stored set with its recursive and closed value, sorted.
  std::vector<std::pair<IndexSet, std::pair<long long, long long>>> rows() const;

 private:
  int n_max_;
  std::map<IndexSet, long long> values_;
};

/// All subsets of {1..n} whose maximum is exactly n, as IndexSets.
std::vector<IndexSet> subsets_with_max(int n);

/// Finite family of unitaries with cached eigen data (1-based access).
struct UnitaryFamily {
  std::vector<CMat> ops;
  std::vector<Spectrum> spectra;
  explicit UnitaryFamily(std::vector<CMat> unitaries);
  int size() const { return static_cast<int>(ops.size()); }
  const CMat& op(int j) const { return ops[static_cast<size_t>(j - 1)]; }
  const Spectrum& spectrum(int j) const { return spectra[static_cast<size_t>(j - 1)]; }
};

/// T(j,k) = sum_{s=0}^{k-j} (-1)^s C(k-j, s) U_{j+s}; satisfies
/// T(j,k) - T(j+1,k+1) = T(j,k+1).
CMat t_factor(const UnitaryFamily& u, int j, int k);

/// The multiple operator integral I_J(U, f) with divided-difference symbol of
/// order |J|-1 and factors T(j_{s-1}, j_s); |J| = 1 gives f(U_j).
CMat i_j_term(const UnitaryFamily& u, const IndexSet& j, const FunctionModel& f);

/// Residual of the expansion of sum_j (-1)^{j-1} C(N-1, j-1) f(U_j) into
/// kappa-weighted I_J terms over all J with max J = N. Requires 2 <= N <= 6.
double verify_binomial_expansion(int n, const UnitaryFamily& u, const FunctionModel& f);

/// Residual of the one-step splitting identity for I_J - I_{J+1} over the
/// prefix subsets of J. Requires max J < family size.
double verify_split_identity(const IndexSet& j, const UnitaryFamily& u, const FunctionModel& f);

}  // namespace ohz
