#include "montrep/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace montrep {

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow in addition");
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow in multiplication");
  return r;
}

i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Fraction::Fraction(i64 num, i64 den) {
  if (den == 0) fail(Errc::invalid_fraction, "zero denominator");
  i64 g = gcd_i64(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  p = num;
  q = den;
}

Fraction Fraction::operator+(const Fraction& o) const {
  return Fraction(checked_add(checked_mul(p, o.q), checked_mul(o.p, q)), checked_mul(q, o.q));
}

Fraction Fraction::operator-(const Fraction& o) const {
  return Fraction(checked_add(checked_mul(p, o.q), -checked_mul(o.p, q)), checked_mul(q, o.q));
}

Fraction Fraction::operator*(const Fraction& o) const {
  return Fraction(checked_mul(p, o.p), checked_mul(q, o.q));
}

Fraction Fraction::operator/(const Fraction& o) const {
  if (o.p == 0) fail(Errc::division_by_zero, "division by zero fraction");
  return Fraction(checked_mul(p, o.q), checked_mul(q, o.p));
}

Fraction Fraction::reciprocal() const {
  if (p == 0) fail(Errc::division_by_zero, "reciprocal of zero");
  return Fraction(q, p);
}

std::string Fraction::str() const {
  if (q == 1) return std::to_string(p);
  return std::to_string(p) + "/" + std::to_string(q);
}

static void check_digits(const ContinuedFraction& ks) {
  if (ks.empty()) fail(Errc::invalid_fraction, "empty continued fraction");
  for (i64 k : ks)
    if (k == 0) fail(Errc::invalid_fraction, "continued fraction digit is zero");
}

Fraction cf_eval(const ContinuedFraction& ks) {
  check_digits(ks);
  i64 prev = 1;     // v_{j-1}
  i64 cur = ks[0];  // v_j
  for (size_t j = 1; j < ks.size(); ++j) {
    if (cur == 0)
      fail(Errc::division_by_zero, "intermediate continued fraction vanishes before last digit");
    i64 next = checked_add(checked_mul(ks[j], cur), prev);
    prev = cur;
    cur = next;
  }
  return Fraction(cur, prev);
}

Fraction tangle_fraction(const ContinuedFraction& ks) {
  Fraction f = cf_eval(ks);
  if (ks.size() % 2 == 0) {
    if (f.zero()) fail(Errc::division_by_zero, "even-length expansion evaluates to zero");
    return f.reciprocal();
  }
  return f;
}

std::pair<std::vector<i64>, std::vector<i64>> uv_sequences(const ContinuedFraction& ks) {
  check_digits(ks);
  size_t m = ks.size();
  std::vector<i64> u(m + 1), v(m + 1);
  u[0] = 0;
  u[1] = 1;
  v[0] = 1;
  v[1] = ks[0];
  for (size_t j = 1; j < m; ++j) {
    u[j + 1] = checked_add(checked_mul(ks[j], u[j]), u[j - 1]);
    v[j + 1] = checked_add(checked_mul(ks[j], v[j]), v[j - 1]);
  }
  return {u, v};
}

std::pair<i64, i64> tilde_of(const ContinuedFraction& ks) {
  auto [u, v] = uv_sequences(ks);
  size_t m = ks.size();
  i64 pt, qt, qr;
  if (m % 2 == 1) {
    pt = u[m];
    qt = u[m - 1];
    qr = v[m - 1];
  } else {
    pt = u[m - 1];
    qt = u[m];
    qr = v[m];
  }
  // align signs with the denominator-positive tangle fraction
  if (qr < 0) {
    pt = -pt;
    qt = -qt;
  }
  return {pt, qt};
}

namespace {

// Digits ks (innermost first) with [[ks]] == x exactly, every digit nonzero.
ContinuedFraction cf_digits(const Fraction& x) {
  ContinuedFraction rev;  // collected outermost first: k_m, ..., k_1
  i64 p = x.p, q = x.q;   // q > 0
  for (;;) {
    if (p % q == 0) {
      rev.push_back(p / q);
      break;
    }
    i64 k = p / q;  // truncation toward zero
    if (k == 0) k = (p > 0) ? 1 : -1;
    i64 np = q, nq = p - checked_mul(k, q);  // reciprocal of the remainder
    if (nq < 0) {
      np = -np;
      nq = -nq;
    }
    rev.push_back(k);
    p = np;
    q = nq;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// Replace the innermost digit K by a two-digit prefix with the same value,
// flipping the length parity.
ContinuedFraction split_first_digit(const ContinuedFraction& ks) {
  ContinuedFraction out;
  i64 k1 = ks[0];
  if (k1 != 1) {
    out = {1, k1 - 1};
  } else {
    out = {-1, k1 + 1};
  }
  out.insert(out.end(), ks.begin() + 1, ks.end());
  return out;
}

}  // namespace

ContinuedFraction cf_expand(const Fraction& f) {
  if (f.p == 0) fail(Errc::invalid_fraction, "cannot expand a zero fraction");
  ContinuedFraction a = cf_digits(f);  // valid when m odd
  if (a.size() % 2 == 0) a = split_first_digit(a);
  ContinuedFraction b = cf_digits(f.reciprocal());  // valid when m even
  if (b.size() % 2 == 1) b = split_first_digit(b);
  return (b.size() < a.size()) ? b : a;
}

TangleData make_tangle_data(const ContinuedFraction& ks) {
  TangleData td;
  td.ks = ks;
  Fraction f = tangle_fraction(ks);
  if (f.p == 0) fail(Errc::invalid_fraction, "tangle fraction has zero numerator");
  auto [pt, qt] = tilde_of(ks);
  auto uv = uv_sequences(ks);
  td.u = uv.first;
  td.v = uv.second;
  i64 p = f.p, q = f.q;
  if (p < 0) {  // canonical form keeps the numerator positive
    p = -p;
    q = -q;
    pt = -pt;
    qt = -qt;
  }
  td.p = p;
  td.q = q;
  td.pt = pt;
  td.qt = qt;
  if (checked_add(checked_mul(td.pt, td.q), -checked_mul(td.p, td.qt)) != 1)
    fail(Errc::internal, "companion identity violated");
  return td;
}

TangleData make_tangle_data(const Fraction& f) {
  if (f.p == 0) fail(Errc::invalid_fraction, "tangle fraction must have nonzero numerator");
  return make_tangle_data(cf_expand(f));
}

Fraction mu_of(const std::vector<Fraction>& tangle_fractions) {
  Fraction mu(0, 1);
  for (const Fraction& f : tangle_fractions) {
    if (f.p == 0) fail(Errc::invalid_fraction, "tangle fraction must have nonzero numerator");
    mu = mu + Fraction(f.q, f.p);
  }
  return mu;
}

}  // namespace montrep
