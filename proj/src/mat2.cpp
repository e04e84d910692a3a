#include "montrep/mat2.hpp"

#include <cmath>
#include <vector>

namespace montrep {

namespace {
const cplx I1(0.0, 1.0);
}

Mat2 make_mat(cplx a11, cplx a12, cplx a21, cplx a22) {
  Mat2 m;
  m << a11, a12, a21, a22;
  return m;
}

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Mat2& a, const Mat2& b) { return max_abs(a - b); }

bool is_tracefree_sl2(const Mat2& m, double tol) {
  return std::abs(m.trace()) <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

Mat2 mat_A(cplx a) {
  if (a == cplx(0)) fail(Errc::zero_parameter, "A(a) needs a != 0");
  cplx ai = 1.0 / a;
  return make_mat(0.5 * (a + ai) * I1, 0.5 * (a - ai), 0.5 * (a - ai), -0.5 * (a + ai) * I1);
}

Mat2 mat_D(cplx b) {
  if (b == cplx(0)) fail(Errc::zero_parameter, "D(b) needs b != 0");
  return make_mat(b, 0, 0, 1.0 / b);
}

Mat2 mat_E(cplx b) {
  if (b == cplx(0)) fail(Errc::zero_parameter, "E(b) needs b != 0");
  cplx bi = 1.0 / b;
  cplx beta = 0.5 * (b + bi), gamma = 0.5 * (b - bi);
  return make_mat(beta, gamma * I1, -gamma * I1, beta);
}

Mat2 mat_S(int a, bool transposed) {
  if (a != 1 && a != -1) fail(Errc::invalid_parameter, "S_a needs a in {+1,-1}");
  cplx d = double(a) * I1;
  if (transposed) return make_mat(d, 0, 1, -d);
  return make_mat(d, 1, 0, -d);
}

Mat2 transfer_B(cplx w, cplx a) {
  return make_mat(1.0 + w, a * w, -a * w, 1.0 - w);
}

Mat2 transfer_C(cplx w, cplx a) {
  if (w == cplx(0) || a == cplx(0)) fail(Errc::zero_parameter, "C(w) needs w, a != 0");
  cplx wi = 1.0 / w, ai = 1.0 / a;
  cplx den = a - ai;
  if (std::abs(den) < 1e-14) fail(Errc::invalid_parameter, "C(w) undefined at a = +-1");
  return (1.0 / den) * make_mat(a * w - ai * wi, w - wi, -(w - wi), a * wi - ai * w);
}

Mat2 conjugate(const Mat2& P, const Mat2& X) {
  if (std::abs(P.determinant()) < 1e-14) fail(Errc::singular_matrix, "conjugation by singular matrix");
  return P * X * P.inverse();
}

cplx bracket(i64 k, cplx s) {
  if (s == cplx(0)) fail(Errc::zero_parameter, "bracket needs s != 0");
  if (k == 0) return 0.0;
  if (std::abs(s - 1.0) < 1e-6 || std::abs(s + 1.0) < 1e-6) {
    i64 n = k < 0 ? -k : k;
    cplx s2 = s * s;
    cplx term = std::pow(s, double(1 - n));
    cplx sum = 0.0;
    for (i64 j = 0; j < n; ++j) {
      sum += term;
      term *= s2;
    }
    return k < 0 ? -sum : sum;
  }
  return (std::pow(s, double(k)) - std::pow(s, double(-k))) / (s - 1.0 / s);
}

std::pair<Mat2, Mat2> pair_transfer(const Mat2& nw, const Mat2& ne, const Mat2& T) {
  return {-(nw * T(0, 0) + ne * T(1, 0)), -(nw * T(0, 1) + ne * T(1, 1))};
}

RegularPairResult is_regular_pair(const Mat2& Z, const Mat2& W, double tol) {
  if (!is_tracefree_sl2(Z, tol) || !is_tracefree_sl2(W, tol))
    fail(Errc::not_tracefree, "is_regular_pair needs tracefree determinant-one inputs");

  // Columns of Z + iI span the +i eigenspace, columns of Z - iI the -i one.
  Mat2 Zp = Z + I1 * Mat2::Identity();
  Mat2 Zm = Z - I1 * Mat2::Identity();
  Eigen::Vector2cd vp = Zp.col(0).norm() >= Zp.col(1).norm() ? Zp.col(0) : Zp.col(1);
  Eigen::Vector2cd vm = Zm.col(0).norm() >= Zm.col(1).norm() ? Zm.col(0) : Zm.col(1);
  Mat2 Pinv;
  Pinv << vp, vm;
  cplx det = Pinv.determinant();
  if (std::abs(det) < 1e-14) fail(Errc::internal, "eigenbasis degenerated");
  Pinv.col(0) /= det;  // det(Pinv) = 1
  Mat2 P0 = make_mat(Pinv(1, 1), -Pinv(0, 1), -Pinv(1, 0), Pinv(0, 0));

  Mat2 Wp = P0 * W * Pinv;
  cplx w12 = Wp(0, 1), w21 = Wp(1, 0);

  cplx tau = -(Z * W).trace();
  cplx disc = std::sqrt(tau * tau - 4.0);
  cplx s1 = 0.5 * (tau + disc), s2 = 0.5 * (tau - disc);
  cplx s = s1;
  if (std::abs(s1.imag() - s2.imag()) < 1e-13) {
    s = std::abs(s1) >= std::abs(s2) ? s1 : s2;  // both real: take |s| >= 1
  } else if (s2.imag() > s1.imag()) {
    s = s2;
  }

  RegularPairResult res;
  cplx half_off = 0.5 * (s - 1.0 / s);
  if (std::abs(half_off) > tol) {
    // generic regular pair: scale off-diagonals to the A(s) shape
    cplx b2 = std::abs(w12) >= std::abs(w21) ? half_off / w12 : w21 / half_off;
    res.regular = true;
    res.s = s;
    res.P = mat_D(std::sqrt(b2)) * P0;
    return res;
  }

  int a = s.real() >= 0 ? 1 : -1;
  if (max_abs_diff(W, double(a) * Z) <= tol) {
    res.regular = true;  // W = aZ: already the A(a) shape in any frame
    res.s = double(a);
    res.P = P0;
    return res;
  }
  res.regular = false;
  res.a = a;
  res.s = double(a);
  if (std::abs(w12) >= std::abs(w21)) {
    res.variant = PairVariant::S;
    res.P = mat_D(std::sqrt(1.0 / w12)) * P0;
  } else {
    res.variant = PairVariant::Sprime;
    res.P = mat_D(std::sqrt(w21)) * P0;
  }
  return res;
}

namespace {

// Candidate (e, f) pairs with D(e) K D(f) = Zt, for a fixed middle factor K.
std::vector<std::pair<cplx, cplx>> solve_mid(const Mat2& K, const Mat2& Zt) {
  constexpr double eps = 1e-12;
  std::vector<std::pair<cplx, cplx>> out;
  auto usable = [&](cplx k, cplx z) { return std::abs(k) > eps && std::abs(z) > eps; };

  bool diag_ok = usable(K(0, 0), Zt(0, 0)) || usable(K(1, 1), Zt(1, 1));
  bool off_ok = usable(K(0, 1), Zt(0, 1)) || usable(K(1, 0), Zt(1, 0));

  cplx ef = 1, eof = 1;  // e*f and e/f
  if (diag_ok)
    ef = usable(K(0, 0), Zt(0, 0)) ? Zt(0, 0) / K(0, 0) : K(1, 1) / Zt(1, 1);
  if (off_ok)
    eof = usable(K(0, 1), Zt(0, 1)) ? Zt(0, 1) / K(0, 1) : K(1, 0) / Zt(1, 0);

  if (diag_ok && off_ok) {
    cplx e = std::sqrt(ef * eof);
    if (std::abs(e) > eps) {
      out.push_back({e, ef / e});
      out.push_back({-e, -ef / e});
    }
  } else if (diag_ok) {
    out.push_back({cplx(1), ef});
  } else if (off_ok) {
    cplx e = std::sqrt(eof);
    if (std::abs(e) > eps) out.push_back({e, 1.0 / e});
  }
  return out;
}

bool near(cplx a, cplx b) { return std::abs(a - b) < 1e-9; }

}  // namespace

DEDecomp de_decompose(const Mat2& Z, cplx b1, cplx b2, double tol) {
  if (b1 == cplx(0) || b2 == cplx(0)) fail(Errc::zero_parameter, "de_decompose needs b1, b2 != 0");
  cplx beta1 = 0.5 * (b1 + 1.0 / b1), gamma1 = 0.5 * (b1 - 1.0 / b1);
  cplx beta2 = 0.5 * (b2 + 1.0 / b2), gamma2 = 0.5 * (b2 - 1.0 / b2);

  auto residual_of = [&](cplx c1, cplx c2, cplx c3) {
    return max_abs_diff(mat_D(c1) * mat_E(b1) * mat_D(c2) * mat_E(b2) * mat_D(c3), Z);
  };

  DEDecomp best;
  best.residual = 1e300;
  auto consider = [&](cplx c1, cplx c2, cplx c3) {
    if (std::abs(c1) < 1e-14 || std::abs(c2) < 1e-14 || std::abs(c3) < 1e-14) return;
    double r = residual_of(c1, c2, c3);
    if (r < best.residual) best = {c1, c2, c3, r};
  };

  bool deg1 = std::abs(gamma1) < 1e-9 || std::abs(beta1) < 1e-9;
  bool deg2 = std::abs(gamma2) < 1e-9 || std::abs(beta2) < 1e-9;

  if (!deg1 && !deg2) {
    cplx g = beta1 * beta2 * gamma1 * gamma2;
    cplx h = beta1 * beta1 * beta2 * beta2 + gamma1 * gamma1 * gamma2 * gamma2;
    cplx sigma = Z(0, 0) * Z(1, 1);
    // g x^2 + (h - sigma) x + g = 0 with x = c2^2
    cplx B = h - sigma;
    cplx disc = std::sqrt(B * B - 4.0 * g * g);
    for (cplx x : {(-B + disc) / (2.0 * g), (-B - disc) / (2.0 * g)}) {
      if (std::abs(x) < 1e-14) continue;
      cplx c2 = std::sqrt(x);
      Mat2 M = mat_E(b1) * mat_D(c2) * mat_E(b2);
      for (auto [e, f] : solve_mid(M, Z)) consider(e, c2, f);
    }
  } else {
    // Degenerate factors E(+-1) = +-I and E(+-i) = +-J collapse the middle
    // diagonal; fold c2 into a neighbour and solve the reduced form.
    Mat2 J = make_mat(0, -1, 1, 0);
    auto is_pm_one = [&](cplx b) { return near(b, 1.0) || near(b, -1.0); };
    cplx sign1 = near(b1, 1.0) || near(b1, cplx(0, 1)) ? 1.0 : -1.0;
    cplx sign2 = near(b2, 1.0) || near(b2, cplx(0, 1)) ? 1.0 : -1.0;

    if (deg1 && !deg2) {
      if (is_pm_one(b1)) {  // E(b1) = sign1 * I: Z = sign1 D(c1 c2) E(b2) D(c3)
        for (auto [e, f] : solve_mid(mat_E(b2), sign1 * Z)) consider(e, 1.0, f);
      } else {  // E(b1) = sign1 * J
        for (auto [e, f] : solve_mid(J * mat_E(b2), sign1 * Z)) consider(e, 1.0, f);
      }
    } else if (!deg1 && deg2) {
      if (is_pm_one(b2)) {
        for (auto [e, f] : solve_mid(mat_E(b1), sign2 * Z)) consider(e, f, 1.0);
      } else {  // D(c2) E(b2) D(c3) = sign2 D(c2/c3) J: move J to the right
        for (auto [e, f] : solve_mid(mat_E(b1), sign2 * Z * J.inverse())) consider(e, f, 1.0);
      }
    } else {
      Mat2 L1 = is_pm_one(b1) ? Mat2(sign1 * Mat2::Identity()) : Mat2(sign1 * J);
      Mat2 L2 = is_pm_one(b2) ? Mat2(sign2 * Mat2::Identity()) : Mat2(sign2 * J);
      for (auto [e, f] : solve_mid(L1 * L2, Z)) consider(e, 1.0, f);
    }
  }

  if (best.residual > tol) {
    if (deg1 || deg2)
      fail(Errc::degenerate_parameters, "de_decompose: degenerate b1/b2 leave the target unreachable");
    fail(Errc::no_solution, "de_decompose: no consistent (c1,c2,c3) found");
  }
  return best;
}

}  // namespace montrep
