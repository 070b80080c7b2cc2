#pragma once

#include <optional>
#include <vector>

#include "ohz/moduli.hpp"
#include "ohz/operator_integrals.hpp"
#include "ohz/sampling.hpp"

namespace ohz {

/// Which operator modulus is being maximized.
enum class OmegaTag {
  Diff,   // sup ||f(A) - f(B)||,     ||A - B|| <= delta
  Comm1,  // sup ||f(A)R - Rf(A)||,   R self-adjoint, ||R|| = 1, ||AR - RA|| <= delta
  Comm2,  // same with arbitrary R
  Comm3,  // sup ||f(A)R - Rf(B)||,   ||R|| = 1, ||AR - RB|| <= delta
};

struct OmegaParams {
  double delta = 0.1;
  int dim = 4;
  int restarts = 20;
  int iters = 200;
  double cap = 1.0;        // spectrum confinement ||A|| <= cap
  double step0_frac = 0.1; // initial step = step0_frac * delta
  OmegaTag tag = OmegaTag::Diff;
};

/// Certified lower bound for the tagged functional: the value is re-evaluated
/// exactly at the stored witness and the constraint slack is checked.
struct OmegaEstimate {
  double delta = 0.0;
  double lower_bound = 0.0;
  OmegaTag tag = OmegaTag::Diff;
  CMat a;       // first operator
  CMat second;  // B (Diff/Comm3); unused otherwise
  CMat r;       // commutator factor (Comm tags)
  double constraint_value = 0.0;
  int restarts = 0;
  int iters = 0;
};

/// Projected subgradient ascent (top singular pair of the inner matrix,
/// Daleckii-Krein adjoint for the operator direction, spectral clipping onto
/// the constraint set) with random restarts; optional warm starts join the
/// restart pool. Falls back to random hill steps where the symbol lacks
/// derivatives.
OmegaEstimate omega_search(const FunctionModel& f, const OmegaParams& params, uint64_t seed,
                           const std::vector<OmegaEstimate>* warm_starts = nullptr);

/// Witness transfers along the commutator ordering: an Omega_f witness turns
/// into a quasicommutator witness with R = I at equal value; a Comm1 witness
/// turns into an Omega_f candidate through the tau = 1/2 block rotation
/// (value >= source/2, constraint <= (1/2 + 1/(2 sqrt 3)) times the source
/// commutator norm). Throws when the transferred witness violates its
/// constraint rather than clipping silently.
OmegaEstimate transfer_to_quasicommutator(const OmegaEstimate& diff_witness);
OmegaEstimate transfer_to_difference(const FunctionModel& f, const OmegaEstimate& comm_witness);

/// Growing registry of finite-rank rational-entry pairs with per-delta
/// running maxima of ||f(A) - f(B)||.
class Registry {
 public:
  Registry(FunctionModel f, std::vector<double> delta_grid);

  /// Appends `budget` deterministically enumerated pairs (dimension <= 4,
  /// entries on a 1/q grid with q doubling every round).
  void extend(int budget);
  void append(const CMat& a, const CMat& b);

  const std::vector<double>& delta_grid() const { return deltas_; }
  const std::vector<double>& maxima() const { return maxima_; }
  long long entries() const { return count_; }

 private:
  FunctionModel f_;
  std::vector<double> deltas_;
  std::vector<double> maxima_;
  long long count_ = 0;
  long long cursor_ = 0;  // deterministic enumeration position
};

/// C_hat = max over the delta grid of omega_search(f, delta) / (delta log(2/delta)),
/// delta <= 1. Rejects unbounded f.
struct ZygmundFit {
  double c_hat = 0.0;
  std::vector<std::pair<double, double>> curve;  // (delta, estimate)
};
ZygmundFit zygmund_fit(const FunctionModel& f, const std::vector<double>& delta_grid,
                       const OmegaParams& budget, uint64_t seed);

}  // namespace ohz
