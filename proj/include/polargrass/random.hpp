#pragma once

// Seeded generators for random test instances. Every instance derives from a
// named 64-bit seed so reports can be reproduced exactly.

#include <cstdint>
#include <random>

#include "polargrass/numeric.hpp"

namespace polargrass {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
  cplx complex_normal() { return {normal(), normal()}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

RMatrix random_real(Rng& rng, Index rows, Index cols);
CMatrix random_complex(Rng& rng, Index rows, Index cols);

/// Haar-distributed orthogonal / unitary matrices (QR with sign fix).
RMatrix random_orthogonal(Rng& rng, Index n);
CMatrix random_unitary(Rng& rng, Index n);

/// Q1 diag(e^s) Q2 with s uniform in [-spread, spread]; condition number
/// bounded by e^{2 spread}.
RMatrix random_gl(Rng& rng, Index n, double spread = 1.0);

/// Complex symmetric Z with operator norm uniform in [lo, hi].
CMatrix random_symmetric_contraction(Rng& rng, Index n, double lo = 0.1, double hi = 0.95);

/// Complex antisymmetric Z scaled to operator norm `scale`.
CMatrix random_antisymmetric(Rng& rng, Index n, double scale = 1.0);

}  // namespace polargrass
