#include "ohz/index_sets.hpp"

#include <algorithm>
#include <sstream>

namespace ohz {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvariantError("kappa: 64-bit overflow");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw InvariantError("kappa: 64-bit overflow");
  return r;
}

void validate(const std::vector<int>& xs) {
  if (xs.empty()) throw DomainError("IndexSet: empty");
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 1) throw DomainError("IndexSet: elements must be positive");
    if (i > 0 && xs[i] <= xs[i - 1]) throw DomainError("IndexSet: must be strictly increasing");
  }
}

}  // namespace

IndexSet::IndexSet(std::initializer_list<int> xs) : elems(xs) { validate(elems); }
IndexSet::IndexSet(std::vector<int> xs) : elems(std::move(xs)) { validate(elems); }

IndexSet IndexSet::translated(int shift) const {
  std::vector<int> out = elems;
  for (int& x : out) x += shift;
  return IndexSet(std::move(out));
}

IndexSet IndexSet::with(int extra) const {
  std::vector<int> out = elems;
  out.push_back(extra);
  std::sort(out.begin(), out.end());
  return IndexSet(std::move(out));
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < elems.size(); ++i) os << (i ? " " : "") << elems[i];
  os << "}";
  return os.str();
}

long long evidence_count(const IndexSet& j1, const IndexSet& j2) {
  long long count = 0;
  const auto& e = j2.elems;
  // sorted distinct, so the admissible two-part partitions are the prefix cuts
  for (size_t cut = 1; cut < e.size(); ++cut) {
    std::vector<int> candidate(e.begin(), e.begin() + static_cast<long>(cut));
    for (size_t i = cut; i < e.size(); ++i) candidate.push_back(e[i] - 1);
    std::sort(candidate.begin(), candidate.end());
    candidate.erase(std::unique(candidate.begin(), candidate.end()), candidate.end());
    if (candidate == j1.elems) ++count;
  }
  return count;
}

long long kappa_closed(const IndexSet& j) {
  // gap multinomial as a product of binomials, overflow-checked
  long long result = 1;
  long long total = 0;
  for (int s = 1; s < j.size(); ++s) {
    long long gap = j.elems[static_cast<size_t>(s)] - j.elems[static_cast<size_t>(s - 1)];
    total += gap;
    // C(total, gap)
    long long c = 1;
    for (long long i = 1; i <= gap; ++i) c = checked_mul(c, total - gap + i) / i;
    result = checked_mul(result, c);
  }
  return result;
}

KappaTable::KappaTable(int n_max) : n_max_(n_max) {
  if (n_max < 1 || n_max > 16) throw DomainError("KappaTable: n_max must be in [1, 16]");
  values_[IndexSet{1}] = 1;
  for (int n = 2; n <= n_max; ++n) {
    std::vector<IndexSet> previous = subsets_with_max(n - 1);
    for (const IndexSet& j : subsets_with_max(n)) {
      long long acc = 0;
      for (const IndexSet& i : previous) {
        long long ev = evidence_count(i, j);
        if (ev) acc = checked_add(acc, checked_mul(ev, values_.at(i)));
      }
      values_[j] = acc;
    }
  }
}

long long KappaTable::recursive(const IndexSet& j) const {
  auto it = values_.find(j);
  if (it == values_.end()) throw DomainError("KappaTable: set exceeds the built range");
  return it->second;
}

std::vector<std::pair<IndexSet, std::pair<long long, long long>>> KappaTable::rows() const {
  std::vector<std::pair<IndexSet, std::pair<long long, long long>>> out;
  out.reserve(values_.size());
  for (const auto& [j, v] : values_) out.push_back({j, {v, kappa_closed(j)}});
  return out;
}

std::vector<IndexSet> subsets_with_max(int n) {
  std::vector<IndexSet> out;
  if (n < 1) return out;
  const int rest = n - 1;  // free elements 1..n-1
  for (unsigned mask = 0; mask < (1u << rest); ++mask) {
    std::vector<int> xs;
    for (int b = 0; b < rest; ++b)
      if (mask & (1u << b)) xs.push_back(b + 1);
    xs.push_back(n);
    out.push_back(IndexSet(std::move(xs)));
  }
  return out;
}

UnitaryFamily::UnitaryFamily(std::vector<CMat> unitaries) : ops(std::move(unitaries)) {
  spectra.reserve(ops.size());
  for (const CMat& u : ops) {
    if (!is_unitary(u)) throw DomainError("UnitaryFamily: non-unitary member");
    spectra.push_back(eig_normal(u));
  }
}

CMat t_factor(const UnitaryFamily& u, int j, int k) {
  if (j < 1 || k <= j || k > u.size()) throw DomainError("t_factor: need 1 <= j < k <= N");
  CMat acc = CMat::Zero(u.op(1).rows(), u.op(1).cols());
  for (int s = 0; s <= k - j; ++s) {
    double sign = (s % 2) ? -1.0 : 1.0;
    acc += sign * static_cast<double>(binomial(k - j, s)) * u.op(j + s);
  }
  return acc;
}

CMat i_j_term(const UnitaryFamily& u, const IndexSet& j, const FunctionModel& f) {
  if (j.max() > u.size()) throw DomainError("i_j_term: set exceeds the family");
  const int d = j.size();
  if (d == 1) {
    const Spectrum& s = u.spectrum(j.min());
    CVec fv(s.dim());
    for (int i = 0; i < s.dim(); ++i) fv(i) = f.value(s.values(i));
    return s.vectors * fv.asDiagonal() * s.vectors.adjoint();
  }
  std::vector<Spectrum> spectra;
  std::vector<CMat> factors;
  spectra.reserve(static_cast<size_t>(d));
  factors.reserve(static_cast<size_t>(d) - 1);
  for (int s = 0; s < d; ++s) {
    spectra.push_back(u.spectrum(j.elems[static_cast<size_t>(s)]));
    if (s > 0)
      factors.push_back(
          t_factor(u, j.elems[static_cast<size_t>(s - 1)], j.elems[static_cast<size_t>(s)]));
  }
  return moi(f, d - 1, spectra, factors, /*max_order=*/6);
}

double verify_binomial_expansion(int n, const UnitaryFamily& u, const FunctionModel& f) {
  if (n < 2 || n > 6) throw DomainError("verify_binomial_expansion: N must be in [2, 6]");
  if (u.size() < n) throw DomainError("verify_binomial_expansion: family too small");
  CMat lhs = CMat::Zero(u.op(1).rows(), u.op(1).cols());
  for (int j = 1; j <= n; ++j) {
    double sign = ((j - 1) % 2) ? -1.0 : 1.0;
    lhs += sign * static_cast<double>(binomial(n - 1, j - 1)) * i_j_term(u, IndexSet{j}, f);
  }
  KappaTable kappa(n);
  CMat rhs = CMat::Zero(lhs.rows(), lhs.cols());
  for (const IndexSet& j : subsets_with_max(n)) {
    long long k = kappa.recursive(j);
    if (k) rhs += static_cast<double>(k) * i_j_term(u, j, f);
  }
  return (lhs - rhs).norm();
}

double verify_split_identity(const IndexSet& j, const UnitaryFamily& u, const FunctionModel& f) {
  const int n = j.max() + 1;
  if (n > u.size()) throw DomainError("verify_split_identity: need the family to reach max J + 1");
  CMat lhs = i_j_term(u, j, f) - i_j_term(u, j.translated(1), f);
  CMat rhs = i_j_term(u, j.with(n), f);
  const auto& e = j.elems;
  for (size_t cut = 1; cut + 0 < e.size(); ++cut) {
    // Lambda = prefix, Lambda_circ = suffix, Lambda_bullet = suffix + {max Lambda}
    std::vector<int> prefix(e.begin(), e.begin() + static_cast<long>(cut));
    std::vector<int> circ(e.begin() + static_cast<long>(cut), e.end());
    std::vector<int> bullet = circ;
    bullet.push_back(prefix.back());
    std::sort(bullet.begin(), bullet.end());

    auto united = [&prefix](const std::vector<int>& tail) {
      std::vector<int> xs = prefix;
      for (int t : tail) xs.push_back(t + 1);
      std::sort(xs.begin(), xs.end());
      return IndexSet(xs);
    };
    rhs += i_j_term(u, united(circ), f);
    rhs += i_j_term(u, united(bullet), f);
  }
  return (lhs - rhs).norm();
}

}  // namespace ohz
