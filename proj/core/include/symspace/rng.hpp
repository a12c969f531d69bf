#pragma once

#include <cstdint>

#include "symspace/mat.hpp"

namespace symspace {

// SplitMix64. Hand-rolled so that seeded runs are bit-identical across
// platforms and standard library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller
  double gauss();

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Mat random_mat(Rng& rng, int rows, int cols);
Mat random_symmetric(Rng& rng, int n);
Mat random_skew(Rng& rng, int n);
Mat random_orthogonal(Rng& rng, int n);
// spd with prescribed 2-norm condition number: Q D Q^T, D log-spaced.
Mat random_spd(Rng& rng, int n, double cond);
// nonsingular with prescribed condition: Q1 D Q2^T.
Mat random_with_condition(Rng& rng, int n, double cond);

}  // namespace symspace
