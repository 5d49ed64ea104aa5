#pragma once

// Deterministic random numbers.  A single 64-bit seed expands through
// SplitMix64; sub-streams are derived by mixing a counter into the seed so
// that sample i never depends on how many samples were drawn before it.
// Gaussians come from Box-Muller on the raw stream, keeping the output
// bit-reproducible across platforms (no std::normal_distribution).

#include <cstdint>
#include <cmath>

#include "matmorse/matrix.hpp"

namespace matmorse {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + counter * 0xbf58476d1ce4e5b9ULL);
  splitmix64(s);
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // warm up so that small seeds diverge immediately
    splitmix64(state_);
  }

  Rng substream(std::uint64_t counter) const { return Rng(mix_seed(state_, counter)); }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in (0,1)
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Scalar gaussian_scalar(Field f) {
    Scalar s;
    for (int c = 0; c < real_dim(f); ++c) s.c[c] = gaussian();
    return s;
  }

  Matrix gaussian_matrix(Field f, int rows, int cols) {
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gaussian_scalar(f);
    return m;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace matmorse
