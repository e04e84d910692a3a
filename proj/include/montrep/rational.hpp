#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "montrep/error.hpp"

namespace montrep {

using i64 = std::int64_t;

// Overflow-checked 64-bit arithmetic. Inputs whose continued-fraction
// intermediates leave the 64-bit range are rejected with Errc::overflow.
i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i64 gcd_i64(i64 a, i64 b);

/// Exact reduced rational; the denominator is kept positive.
struct Fraction {
  i64 p = 0;
  i64 q = 1;

  Fraction() = default;
  Fraction(i64 num, i64 den);

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator/(const Fraction& o) const;
  bool operator==(const Fraction& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }

  bool zero() const { return p == 0; }
  bool integer() const { return q == 1; }
  Fraction reciprocal() const;
  double value() const { return double(p) / double(q); }
  std::string str() const;
};

/// Digits k1..km of a continued fraction, all nonzero.
using ContinuedFraction = std::vector<i64>;

// [[k1,...,km]] = km + 1/[[k1,...,k_{m-1}]].  Rejects expansions where an
// intermediate value vanishes before the last digit.
Fraction cf_eval(const ContinuedFraction& ks);

// Fraction of the rational tangle with expansion ks: the continued-fraction
// value for odd m, its reciprocal for even m.
Fraction tangle_fraction(const ContinuedFraction& ks);

// u0=0, u1=1, u_{j+1} = k_{j+1} u_j + u_{j-1};  v0=1, v1=k1, same recursion.
// u_j/u_{j-1} = [[k2..kj]] and v_j/v_{j-1} = [[k1..kj]].
std::pair<std::vector<i64>, std::vector<i64>> uv_sequences(const ContinuedFraction& ks);

// Companion pair (pt, qt) satisfying pt*q - p*qt = 1 against the
// (denominator-positive) value of tangle_fraction(ks).
std::pair<i64, i64> tilde_of(const ContinuedFraction& ks);

// Inverse of tangle_fraction: digits ks with tangle_fraction(ks) == f and all
// digits nonzero.  Round-trips exactly; any valid expansion is acceptable.
ContinuedFraction cf_expand(const Fraction& f);

/// Everything the end-matrix formulas need about one rational tangle.
struct TangleData {
  i64 p = 1, q = 1;      // canonical fraction, p > 0, q may be negative
  i64 pt = 1, qt = 0;    // companion pair, pt*q - p*qt = 1
  ContinuedFraction ks;  // recorded expansion; tangle_fraction(ks) == p/q
  std::vector<i64> u, v;

  bool pt_odd() const { return pt % 2 != 0; }
  bool qt_odd() const { return qt % 2 != 0; }
};

TangleData make_tangle_data(const ContinuedFraction& ks);
TangleData make_tangle_data(const Fraction& f);

// mu = sum of q_l/p_l over the tangle fractions p_l/q_l.
Fraction mu_of(const std::vector<Fraction>& tangle_fractions);

}  // namespace montrep
