// Seeded random number generation for state sampling and walks.
//
// std::mt19937_64 is fully specified by the standard; the distributions are
// not, so uniform and Gaussian draws are hand-rolled here.  Fixed seed in,
// identical stream out, on every platform and standard library.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "pptkit/numkit.hpp"

namespace pptkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; one value per call, cached pair.
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

  Complex cgauss() {
    const double re = gauss();
    const double im = gauss();
    return Complex(re, im);
  }

  CVec cgauss_vector(int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = cgauss();
    return v;
  }

  CMat cgauss_matrix(int rows, int cols) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cgauss();
    return m;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Deterministic per-trial seed derivation (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace pptkit
