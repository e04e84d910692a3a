#include "montrep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace montrep {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double VerificationReport::max_residual() const {
  return std::max(std::max(max_crossing_residual, closure_residual),
                  std::max(max_tracefree_residual, max_det_residual));
}

VerificationReport verify_representation(const Diagram& d, const RepAssignment& asg, double tol) {
  VerificationReport rep;
  rep.tol = tol;
  for (size_t a = 0; a < d.arcs.size(); ++a) {
    const Mat2& m = asg.at(int(a));
    rep.max_tracefree_residual = std::max(rep.max_tracefree_residual, std::abs(m.trace()));
    rep.max_det_residual = std::max(rep.max_det_residual, std::abs(m.determinant() - 1.0));
  }
  rep.per_crossing.resize(d.crossings.size());
  for (size_t c = 0; c < d.crossings.size(); ++c) {
    const auto& ca = d.cross_arcs[c];
    Mat2 over = asg.at(ca.over_arc);
    Mat2 lhs = double(ca.out_flag) * asg.at(ca.out_arc);
    Mat2 rhs = over * (double(ca.in_flag) * asg.at(ca.in_arc)) * over.inverse();
    rep.per_crossing[c] = max_abs_diff(lhs, rhs);
    rep.max_crossing_residual = std::max(rep.max_crossing_residual, rep.per_crossing[c]);
  }
  for (const auto& [p1, p2] : d.closure_joins) {
    Mat2 v1 = double(d.outward_flag(p1)) * asg.at(d.arc_of[size_t(p1)]);
    Mat2 v2 = double(d.outward_flag(p2)) * asg.at(d.arc_of[size_t(p2)]);
    rep.closure_residual = std::max(rep.closure_residual, max_abs(v1 + v2));
  }
  rep.pass = rep.max_residual() <= tol;
  return rep;
}

int count_components(const Diagram& d) {
  std::vector<char> joined(size_t(d.num_ports()), 0);
  for (const auto& [p1, p2] : d.closure_joins) {
    joined[size_t(p1)] = 1;
    joined[size_t(p2)] = 1;
  }
  for (int p = 0; p < d.num_ports(); ++p)
    if (d.wire[size_t(p)] < 0 && !joined[size_t(p)])
      fail(Errc::not_closed, "diagram has open ends");

  std::vector<int> root(d.arcs.size());
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[size_t(x)] != x) {
      root[size_t(x)] = root[size_t(root[size_t(x)])];
      x = root[size_t(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { root[size_t(find(a))] = find(b); };

  for (const auto& ca : d.cross_arcs) unite(ca.in_arc, ca.out_arc);
  for (const auto& [p1, p2] : d.closure_joins)
    unite(d.arc_of[size_t(p1)], d.arc_of[size_t(p2)]);

  int count = 0;
  for (size_t a = 0; a < d.arcs.size(); ++a)
    if (find(int(a)) == int(a)) ++count;
  return count;
}

double closure_residual_at(const MontesinosSpec& spec, double theta,
                           const std::vector<i64>& n_list) {
  if (int(n_list.size()) != spec.r())
    fail(Errc::invalid_parameter, "need one root label per tangle");
  try {
    Mat2 T = Mat2::Identity();
    for (int l = 0; l < spec.r(); ++l) {
      cplx s = s_from_theta(spec.tangles[size_t(l)], 1.0, theta, n_list[size_t(l)]);
      T = T * linear_transfer(spec.tangles[size_t(l)], s);
    }
    return max_abs_diff(T, Mat2::Identity());
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::vector<std::pair<double, double>> scan_closure_residual(const MontesinosSpec& spec, int grid,
                                                             const std::vector<i64>& n_list) {
  if (spec.mu.zero()) fail(Errc::used_wrong_case, "scan requires mu != 0");
  if (grid < 3) fail(Errc::invalid_parameter, "grid too small");
  std::vector<std::pair<double, double>> out;
  out.reserve(size_t(grid));
  for (int i = 0; i < grid; ++i) {
    double theta = kTwoPi * double(i) / double(grid);
    out.push_back({theta, closure_residual_at(spec, theta, n_list)});
  }
  return out;
}

std::vector<std::pair<double, double>> find_residual_minima(const MontesinosSpec& spec, int grid,
                                                            const std::vector<i64>& n_list,
                                                            double tol) {
  auto table = scan_closure_residual(spec, grid, n_list);
  int N = int(table.size());
  double step = kTwoPi / double(N);

  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < N; ++i) {
    double prev = table[size_t((i + N - 1) % N)].second;
    double next = table[size_t((i + 1) % N)].second;
    double cur = table[size_t(i)].second;
    if (!std::isfinite(cur) || cur > prev || cur > next) continue;

    double lo = table[size_t(i)].first - step, hi = table[size_t(i)].first + step;
    for (int it = 0; it < 200; ++it) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (closure_residual_at(spec, m1, n_list) < closure_residual_at(spec, m2, n_list))
        hi = m2;
      else
        lo = m1;
    }
    double theta = 0.5 * (lo + hi);
    double res = closure_residual_at(spec, theta, n_list);
    if (res >= tol) continue;
    theta = std::fmod(theta + kTwoPi, kTwoPi);
    bool dup = false;
    for (auto& [t0, r0] : out)
      if (std::abs(t0 - theta) < step || kTwoPi - std::abs(t0 - theta) < step) {
        dup = true;
        if (res < r0) {
          t0 = theta;
          r0 = res;
        }
      }
    if (!dup) out.push_back({theta, res});
  }
  std::sort(out.begin(), out.end());
  return out;
}

VerificationReport verify_class(const MontesinosSpec& spec, const Diagram& d, const RepClass& rep,
                                double tol) {
  RepAssignment asg = assign_montesinos(d, rep.X, rep.Y);
  return verify_representation(d, asg, tol);
}

}  // namespace montrep
