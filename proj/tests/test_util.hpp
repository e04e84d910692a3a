#pragma once

#include <random>

#include "montrep/tangle.hpp"

namespace montrep::testutil {

inline std::mt19937_64 rng(std::uint64_t seed = 0xC0FFEE) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline cplx unit_complex(std::mt19937_64& g) {
  return std::polar(1.0, uniform(g, 0.0, 2.0 * 3.14159265358979323846));
}

inline cplx annulus_complex(std::mt19937_64& g, double lo = 0.5, double hi = 2.0) {
  return std::polar(uniform(g, lo, hi), uniform(g, 0.0, 2.0 * 3.14159265358979323846));
}

// random element of SL(2, C)
inline Mat2 random_sl2(std::mt19937_64& g) {
  for (;;) {
    Mat2 m = make_mat(annulus_complex(g, 0.2, 1.5), annulus_complex(g, 0.2, 1.5),
                      annulus_complex(g, 0.2, 1.5), annulus_complex(g, 0.2, 1.5));
    cplx det = m.determinant();
    if (std::abs(det) > 0.05) return m / std::sqrt(det);
  }
}

// random nonzero digits
inline ContinuedFraction random_expansion(std::mt19937_64& g, int max_m, i64 max_k) {
  std::uniform_int_distribution<int> mlen(1, max_m);
  std::uniform_int_distribution<i64> digit(1, max_k);
  std::uniform_int_distribution<int> sign(0, 1);
  int m = mlen(g);
  ContinuedFraction ks(size_t(m));
  for (auto& k : ks) k = digit(g) * (sign(g) ? 1 : -1);
  return ks;
}

}  // namespace montrep::testutil
