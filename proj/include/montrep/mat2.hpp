#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>

#include "montrep/error.hpp"
#include "montrep/rational.hpp"

namespace montrep {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

Mat2 make_mat(cplx a11, cplx a12, cplx a21, cplx a22);

/// Entrywise max-abs norm and distance.
double max_abs(const Mat2& m);
double max_abs_diff(const Mat2& a, const Mat2& b);

bool is_tracefree_sl2(const Mat2& m, double tol = 1e-8);

// A(a) = 1/2 [ (a+1/a)i   a-1/a ; a-1/a   -(a+1/a)i ], tracefree, det 1.
Mat2 mat_A(cplx a);

// D(b) = diag(b, 1/b).
Mat2 mat_D(cplx b);

// E(b) = 1/2 [ b+1/b  (b-1/b)i ; -(b-1/b)i  b+1/b ];  E(b).A(1) = A(b^2)
// and E(b)E(b') = E(bb').
Mat2 mat_E(cplx b);

// Non-regular normal forms S_a = [ ai 1 ; 0 -ai ] and its transpose S'_a.
Mat2 mat_S(int a, bool transposed);

// Transfer factors for the reducible and the generic chain:
// B(w) = [ 1+w  aw ; -aw  1-w ] with a^2 = 1, B(w)B(w') = B(w+w').
Mat2 transfer_B(cplx w, cplx a);
// C(w) = 1/(a-1/a) [ aw - w^{-1}/a   w - 1/w ; -(w - 1/w)   a/w - w/a ],
// C(w)C(w') = C(ww').
Mat2 transfer_C(cplx w, cplx a);

/// P X P^{-1}.
Mat2 conjugate(const Mat2& P, const Mat2& X);

// {k}_s = (s^k - s^{-k})/(s - 1/s), with the exact summation form
// sign(k) * sum_{j=1..|k|} s^{2j-1-|k|} near s = +-1 where the quotient
// cancels catastrophically (crossover at |s -+ 1| < 1e-6).
cplx bracket(i64 k, cplx s);

// Row vector of matrices times a scalar 2x2, negated:
// (sw, se) = -(nw*T11 + ne*T21, nw*T12 + ne*T22).
std::pair<Mat2, Mat2> pair_transfer(const Mat2& nw, const Mat2& ne, const Mat2& T);

enum class PairVariant { none, S, Sprime };

struct RegularPairResult {
  bool regular = false;
  cplx s;       // regular: s + 1/s = -tr(ZW), branch with Im(s) >= 0
  int a = 0;    // non-regular: -tr(ZW)/2 in {+1,-1}
  PairVariant variant = PairVariant::none;
  Mat2 P;       // P.Z = A(1); P.W = A(s), or S_a/S'_a when non-regular
};

// Simultaneous normalization of a tracefree pair.  (Z, W) is non-regular
// exactly when -tr(ZW) = 2a with a = +-1 and W != aZ.
RegularPairResult is_regular_pair(const Mat2& Z, const Mat2& W, double tol = 1e-8);

struct DEDecomp {
  cplx c1, c2, c3;
  double residual = 0;
};

// Solve D(c1) E(b1) D(c2) E(b2) D(c3) = Z.  Degenerate b in {+-1, +-i} is
// handled by folding the middle diagonal factor; if the reduced system is
// inconsistent the call fails with degenerate_parameters / no_solution.
DEDecomp de_decompose(const Mat2& Z, cplx b1, cplx b2, double tol = 1e-10);

}  // namespace montrep
