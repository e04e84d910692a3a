#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "montrep/rational.hpp"

using namespace montrep;

TEST_CASE("continued fraction evaluation") {
  CHECK(cf_eval({2}) == Fraction(2, 1));
  CHECK(cf_eval({2, 3}) == Fraction(7, 2));
  CHECK(cf_eval({2, -3, 4}) == Fraction(18, 5));
  CHECK(cf_eval({1, 1, 1}) == Fraction(3, 2));
}

TEST_CASE("cf_eval rejects bad digit lists") {
  CHECK_THROWS_AS(cf_eval({2, 0}), Error);
  CHECK_THROWS_AS(cf_eval({}), Error);
  // [[1,-1]] = 0 is fine as a final value but may not be inverted mid-stream
  CHECK(cf_eval({1, -1}) == Fraction(0, 1));
  CHECK_THROWS_AS(cf_eval({1, -1, 5}), Error);
}

TEST_CASE("tangle fraction") {
  CHECK(tangle_fraction({3}) == Fraction(3, 1));
  CHECK(tangle_fraction({2, 3}) == Fraction(2, 7));
  CHECK(tangle_fraction({1, 1, 1}) == Fraction(3, 2));
  CHECK_THROWS_AS(tangle_fraction({1, -1}), Error);
}

TEST_CASE("u and v sequences") {
  auto [u1, v1] = uv_sequences({2, 3});
  CHECK(u1 == std::vector<i64>{0, 1, 3});
  CHECK(v1 == std::vector<i64>{1, 2, 7});
  auto [u2, v2] = uv_sequences({5});
  CHECK(u2 == std::vector<i64>{0, 1});
  CHECK(v2 == std::vector<i64>{1, 5});
  auto [u3, v3] = uv_sequences({1, 1, 1});
  CHECK(u3 == std::vector<i64>{0, 1, 1, 2});
  CHECK(v3 == std::vector<i64>{1, 1, 2, 3});
}

TEST_CASE("quotients of consecutive u and v terms") {
  ContinuedFraction ks{2, -3, 4, 1};
  auto [u, v] = uv_sequences(ks);
  for (size_t j = 2; j <= ks.size(); ++j) {
    if (u[j - 1] != 0) {
      ContinuedFraction tail(ks.begin() + 1, ks.begin() + long(j));
      CHECK(Fraction(u[j], u[j - 1]) == cf_eval(tail));
    }
    ContinuedFraction head(ks.begin(), ks.begin() + long(j));
    CHECK(Fraction(v[j], v[j - 1]) == cf_eval(head));
  }
}

TEST_CASE("companion pair") {
  auto [pt1, qt1] = tilde_of({2, 3});
  CHECK(pt1 == 1);
  CHECK(qt1 == 3);
  auto [pt2, qt2] = tilde_of({2});
  CHECK(pt2 == 1);
  CHECK(qt2 == 0);
  auto [pt3, qt3] = tilde_of({1, 1, 1});
  CHECK(pt3 == 2);
  CHECK(qt3 == 1);
}

TEST_CASE("companion identity for every expansion with m <= 4, |k| <= 3") {
  // the m <= 6, |k| <= 5 sweep runs in the acceptance suite
  std::vector<ContinuedFraction> stack{{}};
  for (int m = 1; m <= 4; ++m) {
    std::vector<ContinuedFraction> next;
    for (const auto& base : stack) {
      for (i64 k = -3; k <= 3; ++k) {
        if (k == 0) continue;
        ContinuedFraction ks = base;
        ks.push_back(k);
        next.push_back(ks);
      }
    }
    for (const auto& ks : next) {
      Fraction f;
      try {
        f = tangle_fraction(ks);
      } catch (const Error&) {
        continue;
      }
      auto [pt, qt] = tilde_of(ks);
      CHECK(pt * f.q - f.p * qt == 1);
    }
    stack = std::move(next);
  }
}

TEST_CASE("expansion round trip") {
  CHECK(tangle_fraction(cf_expand(Fraction(2, 7))) == Fraction(2, 7));
  CHECK(cf_expand(Fraction(3, 1)) == ContinuedFraction{3});
  CHECK(tangle_fraction(cf_expand(Fraction(-5, 2))) == Fraction(-5, 2));
  for (i64 p = -12; p <= 12; ++p) {
    for (i64 q = 1; q <= 12; ++q) {
      if (p == 0 || gcd_i64(p, q) != 1) continue;
      Fraction f(p, q);
      ContinuedFraction ks = cf_expand(f);
      for (i64 k : ks) CHECK(k != 0);
      CHECK(tangle_fraction(ks) == f);
    }
  }
}

TEST_CASE("tangle data canonicalizes the numerator sign") {
  TangleData td = make_tangle_data(Fraction(3, -2));
  CHECK(td.p == 3);
  CHECK(td.q == -2);
  CHECK(td.pt * td.q - td.p * td.qt == 1);
  TangleData neg = make_tangle_data(Fraction(-1, 1));
  CHECK(neg.p == 1);
  CHECK(neg.q == -1);
  CHECK(neg.pt * neg.q - neg.p * neg.qt == 1);
}

TEST_CASE("mu") {
  CHECK(mu_of({Fraction(2, 1), Fraction(3, 1)}) == Fraction(5, 6));
  CHECK(mu_of({Fraction(3, 1), Fraction(3, 1), Fraction(3, -2)}) == Fraction(0, 1));
  CHECK(mu_of({Fraction(1, 1), Fraction(1, 1), Fraction(1, 1)}) == Fraction(3, 1));
  CHECK_THROWS_AS(mu_of({Fraction(0, 1)}), Error);
}

TEST_CASE("overflow is detected") {
  i64 big = 4000000000000000000LL;
  CHECK_THROWS_AS(checked_mul(big, 4), Error);
  CHECK_THROWS_AS(cf_eval({big, big, big}), Error);
}
