#include "montrep/tangle.hpp"

namespace montrep {

TangleEnds ends_closed_form(const TangleData& td, const Mat2& X, const Mat2& Y, cplx s,
                            double trace_tol) {
  if (s == cplx(0)) fail(Errc::zero_parameter, "ends_closed_form needs s != 0");
  cplx tau = -(X * Y).trace();
  if (std::abs(tau - (s + 1.0 / s)) > trace_tol)
    fail(Errc::inconsistent_trace, "s + 1/s does not match -tr(XY)");
  double sp = td.pt_odd() ? -1.0 : 1.0;
  double sq = td.qt_odd() ? -1.0 : 1.0;
  i64 p = td.p, q = td.q;
  TangleEnds e;
  e.nw = X;
  e.ne = sp * (bracket(1 + p, s) * X + bracket(-p, s) * Y);
  e.sw = sq * (bracket(1 - q, s) * X + bracket(q, s) * Y);
  e.se = sp * sq * (bracket(1 + p - q, s) * X + bracket(q - p, s) * Y);
  return e;
}

Mat2 linear_transfer(const TangleData& td, cplx s, double tol) {
  cplx bp = bracket(td.p, s);
  if (std::abs(bp) < tol) fail(Errc::singular_bracket, "transfer undefined where {p}_s vanishes");
  cplx pre = (td.qt_odd() ? 1.0 : -1.0) / bp;  // (-1)^(qt-1)
  cplx spt = td.pt_odd() ? -1.0 : 1.0;
  cplx bq = bracket(td.q, s);
  Mat2 T = make_mat(bracket(td.p + td.q, s), spt * bq, -spt * bq, bracket(td.p - td.q, s));
  return pre * T;
}

}  // namespace montrep
