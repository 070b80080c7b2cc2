#pragma once

#include <cstdint>
#include <random>

#include "ohz/spectral.hpp"
#include "ohz/types.hpp"

namespace ohz {

/// Deterministic random stream. mt19937_64 output is fully specified by the
/// standard and the transforms below avoid the implementation-defined
/// std::*_distribution, so a (seed, index) pair reproduces bytes everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  /// Independent per-trial stream derived from (master seed, trial index).
  static Rng stream(uint64_t master_seed, uint64_t index);

  double uniform();                 // [0, 1)
  double uniform(double a, double b);
  double normal();                  // Box-Muller
  cplx cnormal();                   // complex standard normal
  uint64_t integer(uint64_t bound); // [0, bound)

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Distribution spec for the randomized experiments: Hermitian entries are
/// i.i.d. complex Gaussian symmetrized, then the spectrum is affinely mapped
/// onto [-L, L]; perturbations are sampled in direction and rescaled to a
/// target spectral norm exactly.
struct OperatorSampler {
  double spectrum_halfwidth = 1.0;  // L
  double contraction_norm = 0.9;    // target norm for sampled contractions

  CMat ginibre(Rng& rng, int n) const;            // raw complex Gaussian
  CMat hermitian(Rng& rng, int n) const;          // spectrum exactly [-L, L]
  CMat psd(Rng& rng, int n) const;                // spectrum in [0, L]
  CMat unitary(Rng& rng, int n) const;            // Haar via QR phase fix
  CMat contraction(Rng& rng, int n) const;        // rescaled Ginibre
  CMat hermitian_direction(Rng& rng, int n) const;  // unit spectral norm
  CMat direction(Rng& rng, int n) const;            // general, unit norm
};

}  // namespace ohz
