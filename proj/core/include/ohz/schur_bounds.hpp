#pragma once

#include "ohz/sampling.hpp"
#include "ohz/types.hpp"

namespace ohz {

/// Two-sided bracket for the Schur multiplier norm of Phi acting on operators
/// (spectral norm to spectral norm).
///
/// lower: best ratio ||Phi o X|| / ||X|| found by randomized + alternating
/// polar ascent; always a valid lower bound (witness kept).
/// upper: min over discovered exact factorizations Phi_ij = <u_i, v_j> of
/// (max_i ||u_i||)(max_j ||v_j||), searched by alternating least squares from
/// an SVD initialization with increasing factorization rank.
struct SchurBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool converged = true;
  CMat witness;  // maximizing X for the lower bound
};

SchurBounds schur_norm_bounds(const CMat& phi, int trials = 12, int sweeps = 40,
                              uint64_t seed = 0x5eed);

}  // namespace ohz
