#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ohz/contraction.hpp"
#include "ohz/moduli.hpp"
#include "ohz/operator_integrals.hpp"
#include "ohz/sampling.hpp"

namespace ohz {

struct TrialRow {
  long long trial = 0;
  int dim = 0;
  double delta = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};

/// One theorem-verification run: config, seed, per-trial rows, summary.
struct ExperimentRecord {
  std::string tag;
  std::string function_id;
  std::string omega_id;
  double alpha = 0.0;
  int m = 1;
  std::vector<int> dims;
  int trials = 0;
  uint64_t seed = 0;
  GridSpec seminorm_grid;
  std::vector<TrialRow> rows;
  long long violations = 0;
  std::string note;

  double max_ratio() const;
  const TrialRow* argmax() const;  // nullptr when empty
};

/// Knobs shared by the ratio experiments.
struct RatioParams {
  double alpha = 0.5;
  int m = 1;
  std::string omega;               // modulus id for the omega-flavoured tags
  std::vector<int> dims = {2, 4, 8};
  std::vector<double> deltas = {1e-3, 1e-2, 1e-1, 0.5};
  GridSpec grid;                   // seminorm grid
};

/// Randomized ratio sweep for one inequality tag. Supported tags:
/// saH sam uH hou oLu cH conh oLc omsa omu omc oon fcc oqc lip fan.
/// Per trial the numerator is the left side of the tagged inequality and the
/// denominator the right side without its absolute constant; the summary
/// envelope is max ratio.
ExperimentRecord ratio_experiment(const std::string& tag, const FunctionModel& f,
                                  const RatioParams& params, const OperatorSampler& sampler,
                                  int trials, uint64_t seed);

/// Hill-climbing refinement of the same ratios: random starts, Gaussian
/// nudges projected back onto the constraint set, best ratio per run.
/// Supported for the pair-style tags (saH, uH, cH, omsa, sam, oon, fcc, ...).
ExperimentRecord ratio_ascent(const std::string& tag, const FunctionModel& f,
                              const RatioParams& params, const OperatorSampler& sampler, int runs,
                              int iters, uint64_t seed);

/// ||A^alpha - B^alpha|| <= ||A - B||^alpha for PSD pairs: constant-1
/// inequality, every trial is a hard assertion (violations counted and the
/// worst witness kept in `note`).
ExperimentRecord bks_check(const OperatorSampler& sampler, double alpha, int trials,
                           const std::vector<int>& dims, uint64_t seed);

/// Finite combination of m-th difference atoms Delta^m_{h_j} delta_{a_j}.
struct DiscreteMeasure {
  int order = 0;  // m; 0 means plain point masses
  struct Atom {
    double weight = 1.0;
    double h = 1.0;
    double a = 0.0;
  };
  std::vector<Atom> atoms;

  static DiscreteMeasure point_mass(double a);
  static DiscreteMeasure difference_atom(int m);  // Delta_1^m delta_0
};

/// sum_j w_j sum_{k=0}^m (-1)^{m-k} C(m,k) f(A - (a_j + k h_j) K).
CMat measure_average(const FunctionModel& f, const CMat& a, const CMat& k,
                     const DiscreteMeasure& nu);

/// Least-squares slope of log(numerator) against log(delta) over the record's
/// rows (scaled-perturbation sweeps).
struct ExponentFit {
  double slope = 0.0;
  double r2 = 0.0;
};
ExponentFit exponent_fit(const ExperimentRecord& record);

/// delta-sweep with a fixed perturbation direction per trial; rows carry
/// ||f(A + delta K) - f(A)|| as numerator. The sampler pins one eigenvalue of
/// A at 0 and biases K towards that eigenvector so a |t|^alpha singularity
/// stays active across the sweep.
ExperimentRecord exponent_sweep(const FunctionModel& f, const std::vector<double>& deltas,
                                int dim, int trials, const OperatorSampler& sampler,
                                uint64_t seed);

/// Norm equalities from the 2x2 block operators behind the commutator /
/// quasicommutator reductions; returns the defect of each equality.
std::vector<double> block_identity_checks(const CMat& a, const CMat& b, const CMat& r);

/// The tau-rotation block unitary [[tau R, S], [-S, tau R]] with
/// S = (I - tau^2 R^2)^{1/2}; bound_factor = tau + tau^2 (1 - tau^2)^{-1/2}.
struct TauRotationBlock {
  CMat block_unitary;
  double bound_factor = 0.0;
};
TauRotationBlock tau_rotation_block(const CMat& a, const CMat& r, double tau);

/// Search (random + ascent) for pairs maximizing ||
/// |A| - |B| || / ||A - B|| per dimension; reports the best-found ratio per
/// dimension (rows keyed by dim, ratio in `ratio`).
ExperimentRecord abs_explorer(const std::vector<int>& dims, int budget, uint64_t seed);

}  // namespace ohz
