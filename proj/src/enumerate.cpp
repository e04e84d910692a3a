#include "montrep/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace montrep {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool odd(i64 x) { return x % 2 != 0; }

// s^k for s in {+1,-1}
int pow_sign(int s, i64 k) { return (s == -1 && odd(k)) ? -1 : 1; }

bool near_pm1(cplx s) { return std::abs(s - 1.0) < 1e-9 || std::abs(s + 1.0) < 1e-9; }

std::string spec_text_from(const std::vector<TangleData>& tds) {
  std::ostringstream os;
  os << "M(";
  for (size_t i = 0; i < tds.size(); ++i) {
    if (i) os << ",";
    os << tds[i].p << "/" << tds[i].q;
  }
  os << ")";
  return os.str();
}

}  // namespace

MontesinosSpec make_spec(const std::vector<Fraction>& fractions, std::string text) {
  if (fractions.empty()) fail(Errc::invalid_fraction, "need at least one tangle fraction");
  MontesinosSpec spec;
  spec.fractions = fractions;
  for (const Fraction& f : fractions) {
    if (f.p == 0) fail(Errc::invalid_fraction, "tangle fraction must have nonzero numerator");
    spec.tangles.push_back(make_tangle_data(f));
  }
  spec.mu = mu_of(fractions);
  spec.mu_num_abs = spec.mu.p < 0 ? -spec.mu.p : spec.mu.p;
  spec.text = text.empty() ? spec_text_from(spec.tangles) : std::move(text);
  return spec;
}

const char* rep_case_tag(RepCase c) {
  switch (c) {
    case RepCase::abelian: return "i";
    case RepCase::reducible_nonabelian: return "ii";
    case RepCase::irreducible_binary: return "iii";
    case RepCase::irreducible_mu0: return "iv";
    case RepCase::irreducible_muN: return "v";
  }
  return "?";
}

const char* rep_case_label(RepCase c) {
  switch (c) {
    case RepCase::abelian: return "abelian";
    case RepCase::reducible_nonabelian: return "reducible non-abelian";
    case RepCase::irreducible_binary: return "irreducible, -tr_h = +-2";
    case RepCase::irreducible_muN: return "irreducible, mu != 0";
    case RepCase::irreducible_mu0: return "irreducible, mu = 0";
  }
  return "?";
}

cplx s_from_theta(const TangleData& td, double abs_a, double theta, i64 n) {
  double p = double(td.p);
  double mag = std::pow(abs_a, 1.0 / p);
  double phase = (theta + double(td.pt) * kPi + 2.0 * double(n) * kPi) / p;
  return std::polar(mag, phase);
}

std::vector<cplx> character_vector(const RepClass& rep) {
  int r = int(rep.X.size());
  std::vector<cplx> out;
  for (int l = 0; l < r; ++l) out.push_back((rep.X[size_t(l)] * rep.X[size_t((l + 1) % r)]).trace());
  for (int l = 0; l < r; ++l) out.push_back((rep.X[size_t(l)] * rep.Y[size_t(l)]).trace());
  out.push_back((rep.X[0] * rep.Y[0] * rep.X[size_t(1 % r)]).trace());
  return out;
}

namespace {

bool common_eigenvector(const RepClass& rep) {
  // X_1 = A(1) = diag(i,-i); a shared eigenvector must be e1 or e2
  double lo21 = 0, lo12 = 0;
  for (const Mat2& m : rep.X) {
    lo21 = std::max(lo21, std::abs(m(1, 0)));
    lo12 = std::max(lo12, std::abs(m(0, 1)));
  }
  for (const Mat2& m : rep.Y) {
    lo21 = std::max(lo21, std::abs(m(1, 0)));
    lo12 = std::max(lo12, std::abs(m(0, 1)));
  }
  return lo21 < 1e-9 || lo12 < 1e-9;
}

}  // namespace

RepClass build_representation(const MontesinosSpec& spec, cplx a, const std::vector<cplx>& s,
                              const BuildSeed& seed, double closure_tol) {
  int r = spec.r();
  if (int(s.size()) != r) fail(Errc::invalid_parameter, "one s per tangle required");

  RepClass rep;
  rep.a = a;
  rep.s = s;
  std::vector<Mat2> X(size_t(r)), Y(size_t(r));

  if (seed.Xs) {
    if (int(seed.Xs->size()) != r) fail(Errc::invalid_parameter, "case iii seed needs X_1..X_r");
    X = *seed.Xs;
    for (int l = 0; l < r; ++l) {
      const TangleData& td = spec.tangles[size_t(l)];
      cplx bq = bracket(td.q, s[size_t(l)]);
      if (std::abs(bq) < 1e-9) fail(Errc::singular_bracket, "{q}_s vanishes; Y not recoverable");
      double sq = td.qt_odd() ? -1.0 : 1.0;
      const Mat2& Xn = X[size_t((l + 1) % r)];
      Y[size_t(l)] =
          (1.0 / bq) * (-sq * Xn - bracket(1 - td.q, s[size_t(l)]) * X[size_t(l)]);
    }
  } else {
    if (!seed.Y1) fail(Errc::invalid_parameter, "seed needs Y1 or an X chain");
    X[0] = mat_A(1.0);
    Y[0] = *seed.Y1;
  }

  std::vector<TangleEnds> ends(size_t(r));
  for (int l = 0; l < r; ++l) {
    ends[size_t(l)] = ends_closed_form(spec.tangles[size_t(l)], X[size_t(l)], Y[size_t(l)],
                                       s[size_t(l)]);
    if (!seed.Xs && l + 1 < r) {
      const TangleData& tdn = spec.tangles[size_t(l + 1)];
      X[size_t(l + 1)] = -ends[size_t(l)].sw;
      Mat2 nen = -ends[size_t(l)].se;
      cplx bmp = bracket(-tdn.p, s[size_t(l + 1)]);
      if (std::abs(bmp) < 1e-9) fail(Errc::singular_bracket, "{p}_s vanishes; Y not recoverable");
      double sp = tdn.pt_odd() ? -1.0 : 1.0;
      Y[size_t(l + 1)] =
          (1.0 / bmp) * (sp * nen - bracket(1 + tdn.p, s[size_t(l + 1)]) * X[size_t(l + 1)]);
      ends[size_t(l + 1)].nw = X[size_t(l + 1)];  // filled properly next iteration
    }
  }

  double resid = 0;
  for (int l = 0; l < r; ++l) {
    int nl = (l + 1) % r;
    resid = std::max(resid, max_abs_diff(-ends[size_t(l)].sw, X[size_t(nl)]));
    resid = std::max(resid, max_abs_diff(-ends[size_t(l)].se, ends[size_t(nl)].ne));
  }
  if (!(resid <= closure_tol))
    fail(Errc::closure_violation, "chain fails to close up (residual " + std::to_string(resid) + ")");

  rep.X = std::move(X);
  rep.Y = std::move(Y);
  rep.ends = std::move(ends);
  rep.residual = resid;
  rep.character = character_vector(rep);
  rep.irreducible = !common_eigenvector(rep);
  return rep;
}

// ---------------------------------------------------------------------------
// cases (i) and (ii): sign tuples

namespace {

struct SignTuple {
  int a;
  std::vector<int> s;
};

// tuples (a, s_1..s_r) in {+-1}^{r+1} with (-1)^pt_l s_l^{p_l} = a and
// prod (-1)^(qt_l+1) s_l^{q_l} = 1
std::vector<SignTuple> sign_tuples(const MontesinosSpec& spec) {
  std::vector<SignTuple> out;
  int r = spec.r();
  for (int a : {1, -1}) {
    for (int mask = 0; mask < (1 << r); ++mask) {
      std::vector<int> sgn(size_t(r));
      bool ok = true;
      int prod = 1;
      for (int l = 0; l < r && ok; ++l) {
        const TangleData& td = spec.tangles[size_t(l)];
        int sl = (mask >> l) & 1 ? -1 : 1;
        sgn[size_t(l)] = sl;
        int lhs = (td.pt_odd() ? -1 : 1) * pow_sign(sl, td.p);
        if (lhs != a) ok = false;
        prod *= (td.qt_odd() ? 1 : -1) * pow_sign(sl, td.q);
      }
      if (ok && prod == 1) out.push_back({a, sgn});
    }
  }
  return out;
}

std::vector<cplx> to_cplx(const std::vector<int>& sgn) {
  std::vector<cplx> s;
  for (int v : sgn) s.push_back(double(v));
  return s;
}

}  // namespace

std::vector<RepClass> enumerate_abelian(const MontesinosSpec& spec) {
  std::vector<RepClass> out;
  for (const SignTuple& t : sign_tuples(spec)) {
    BuildSeed seed;
    seed.Y1 = Mat2(double(t.s[0]) * mat_A(1.0));
    RepClass rep = build_representation(spec, double(t.a), to_cplx(t.s), seed);
    rep.rep_case = RepCase::abelian;
    rep.a_sign = t.a;
    rep.s_signs = t.s;
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<RepClass> enumerate_reducible_nonabelian(const MontesinosSpec& spec) {
  std::vector<RepClass> out;
  if (!spec.mu.zero()) return out;
  for (const SignTuple& t : sign_tuples(spec)) {
    for (int variant = 0; variant < 2; ++variant) {
      BuildSeed seed;
      // non-regular normal form of the first pair; its own trace parameter is
      // s_1, which equals a exactly when p_1 is odd and pt_1 is even
      seed.Y1 = mat_S(t.s[0], variant == 1);
      RepClass rep = build_representation(spec, double(t.a), to_cplx(t.s), seed);
      rep.rep_case = RepCase::reducible_nonabelian;
      rep.a_sign = t.a;
      rep.s_signs = t.s;
      rep.y1_variant = variant;
      out.push_back(std::move(rep));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// case (iii)

std::vector<RepClass> enumerate_binary_irreducible(const MontesinosSpec& spec, int a_sign,
                                                   const EnumerateOptions& opts,
                                                   std::vector<std::string>* warnings) {
  std::vector<RepClass> out;
  int r = spec.r();
  if (r == 1) return out;  // coprime (p,q) forces s into {+-1}; nothing here
  double theta_a = a_sign == 1 ? 0.0 : kPi;

  auto note = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_lambda = [&]() { return std::polar(0.5 + 1.5 * unit(rng), 2.0 * kPi * unit(rng)); };

  std::vector<i64> n(size_t(r), 0);
  for (;;) {
    std::vector<cplx> s(size_t(r));
    bool all_pm1 = true;
    for (int l = 0; l < r; ++l) {
      s[size_t(l)] = s_from_theta(spec.tangles[size_t(l)], 1.0, theta_a, n[size_t(l)]);
      if (!near_pm1(s[size_t(l)])) all_pm1 = false;
    }
    if (!all_pm1) {
      bool bracket_ok = true;
      std::vector<cplx> b(size_t(r));
      for (int l = 0; l < r; ++l) {
        const TangleData& td = spec.tangles[size_t(l)];
        if (std::abs(bracket(td.q, s[size_t(l)])) < 1e-9) bracket_ok = false;
        cplx c = (td.qt_odd() ? 1.0 : -1.0) * std::pow(s[size_t(l)], double(td.q));
        b[size_t(l)] = std::sqrt(c);
      }
      if (!bracket_ok) {
        note(spec.text + " case iii tuple skipped: {q}_s vanishes, Y not recoverable");
      } else {
        int samples = r == 2 ? 1 : std::max(1, opts.samples);
        for (int sample = 0; sample < samples; ++sample) {
          std::vector<cplx> lambdas;
          for (int j = 0; j + 2 < r; ++j) lambdas.push_back(random_lambda());
          try {
            Mat2 G = Mat2::Identity();
            for (int j = 0; j + 2 < r; ++j) G = G * mat_D(lambdas[size_t(j)]) * mat_E(b[size_t(j)]);
            DEDecomp de = de_decompose(G.inverse(), b[size_t(r - 2)], b[size_t(r - 1)]);
            lambdas.push_back(de.c1);
            lambdas.push_back(de.c2);

            std::vector<Mat2> X(size_t(r));
            X[0] = mat_A(1.0);
            Mat2 prefix = Mat2::Identity();
            for (int l = 0; l + 1 < r; ++l) {
              prefix = prefix * mat_D(lambdas[size_t(l)]) * mat_E(b[size_t(l)]);
              X[size_t(l + 1)] = prefix * mat_A(1.0) * prefix.inverse();
            }
            for (int l = 0; l < r; ++l) {
              auto reg = is_regular_pair(X[size_t(l)], X[size_t((l + 1) % r)]);
              if (!reg.regular) fail(Errc::no_solution, "adjacent pair not regular");
            }

            BuildSeed seed;
            seed.Xs = X;
            RepClass rep = build_representation(spec, double(a_sign), s, seed);
            rep.rep_case = RepCase::irreducible_binary;
            rep.a_sign = a_sign;
            rep.n_list = n;
            rep.lambdas = lambdas;
            rep.sample_index = sample;
            out.push_back(std::move(rep));
          } catch (const Error& e) {
            note(spec.text + " case iii sample rejected: " + e.what());
          }
        }
      }
    }
    // odometer over 0 <= n_l < p_l
    int l = 0;
    while (l < r) {
      if (++n[size_t(l)] < spec.tangles[size_t(l)].p) break;
      n[size_t(l)] = 0;
      ++l;
    }
    if (l == r) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// cases (iv) and (v): integer tuples in exact arithmetic

std::vector<CaseIvTuple> enumerate_tuples_mu_zero(const MontesinosSpec& spec) {
  if (!spec.mu.zero()) fail(Errc::used_wrong_case, "mu != 0; use the mu != 0 enumerator");
  std::vector<CaseIvTuple> out;
  int r = spec.r();
  std::vector<i64> n(size_t(r), 0);
  for (;;) {
    Fraction sum(0, 1);
    for (int l = 0; l < r; ++l) {
      const TangleData& td = spec.tangles[size_t(l)];
      sum = sum + Fraction(2 * n[size_t(l)] * td.q + 1, td.p);
    }
    Fraction defect = sum - Fraction(r, 1);
    if (defect.integer() && defect.p % 2 == 0) out.push_back({defect.p / 2, n});
    int l = 0;
    while (l < r) {
      if (++n[size_t(l)] < spec.tangles[size_t(l)].p) break;
      n[size_t(l)] = 0;
      ++l;
    }
    if (l == r) break;
  }
  return out;
}

std::vector<CaseVTuple> enumerate_tuples_mu_nonzero(const MontesinosSpec& spec) {
  if (spec.mu.zero()) fail(Errc::used_wrong_case, "mu = 0; use the mu = 0 enumerator");
  std::vector<CaseVTuple> out;
  int r = spec.r();
  i64 N = spec.mu_num_abs;
  std::vector<i64> n(size_t(r), 0);
  for (;;) {
    Fraction sum(0, 1);
    for (int l = 0; l < r; ++l) {
      const TangleData& td = spec.tangles[size_t(l)];
      sum = sum + Fraction(2 * n[size_t(l)] * td.q + 1, td.p);
    }
    for (i64 nn = 0; nn < N; ++nn) {
      Fraction t = Fraction(2 * nn + r, 1) - sum;
      Fraction ratio = t / spec.mu;
      if (ratio.integer()) continue;  // theta would land in pi Z
      CaseVTuple tup;
      tup.n = nn;
      tup.n_list = n;
      tup.theta = kPi * ratio.value();
      tup.a = std::polar(1.0, tup.theta);
      out.push_back(std::move(tup));
    }
    int l = 0;
    while (l < r) {
      if (++n[size_t(l)] < spec.tangles[size_t(l)].p) break;
      n[size_t(l)] = 0;
      ++l;
    }
    if (l == r) break;
  }
  return out;
}

std::vector<cplx> default_a_samples() {
  return {cplx(0.5, 0.0), std::polar(2.0, kPi / 5.0), std::polar(1.0, kPi / 7.0), cplx(-3.0, 0.0),
          std::polar(1.2, 2.0)};
}

std::vector<RepClass> enumerate_case_iv(const MontesinosSpec& spec, const EnumerateOptions& opts,
                                        std::vector<std::string>* warnings) {
  std::vector<RepClass> out;
  std::vector<CaseIvTuple> tuples = enumerate_tuples_mu_zero(spec);
  std::vector<cplx> samples = default_a_samples();
  samples.insert(samples.end(), opts.extra_a.begin(), opts.extra_a.end());
  for (const CaseIvTuple& t : tuples) {
    int idx = 0;
    for (const cplx& a : samples) {
      if (std::abs(a - 1.0) < 1e-9 || std::abs(a + 1.0) < 1e-9) {
        if (warnings) warnings->push_back(spec.text + " case iv sample a = +-1 skipped");
        continue;
      }
      std::vector<cplx> s(size_t(spec.r()));
      for (int l = 0; l < spec.r(); ++l)
        s[size_t(l)] = s_from_theta(spec.tangles[size_t(l)], std::abs(a), std::arg(a),
                                    t.n_list[size_t(l)]);
      BuildSeed seed;
      seed.Y1 = mat_A(s[0]);
      RepClass rep = build_representation(spec, a, s, seed);
      rep.rep_case = RepCase::irreducible_mu0;
      rep.n = t.n;
      rep.n_list = t.n_list;
      rep.sample_index = idx++;
      out.push_back(std::move(rep));
    }
  }
  return out;
}

std::vector<RepClass> enumerate_case_v(const MontesinosSpec& spec,
                                       std::vector<std::string>* warnings) {
  (void)warnings;
  std::vector<RepClass> out;
  for (const CaseVTuple& t : enumerate_tuples_mu_nonzero(spec)) {
    std::vector<cplx> s(size_t(spec.r()));
    for (int l = 0; l < spec.r(); ++l)
      s[size_t(l)] = s_from_theta(spec.tangles[size_t(l)], 1.0, t.theta, t.n_list[size_t(l)]);
    BuildSeed seed;
    seed.Y1 = mat_A(s[0]);
    RepClass rep = build_representation(spec, t.a, s, seed);
    rep.rep_case = RepCase::irreducible_muN;
    rep.n = t.n;
    rep.n_list = t.n_list;
    rep.theta = t.theta;
    out.push_back(std::move(rep));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string character_key(const std::vector<cplx>& ch) {
  std::ostringstream os;
  for (const cplx& c : ch) {
    os << llround(c.real() * 1e6) << "," << llround(c.imag() * 1e6) << ";";
  }
  return os.str();
}

}  // namespace

EnumerationResult enumerate_all(const MontesinosSpec& spec, const EnumerateOptions& opts) {
  EnumerationResult res;
  auto add = [&](std::vector<RepClass>&& v) {
    for (RepClass& c : v) res.classes.push_back(std::move(c));
  };

  if (opts.cases[0]) add(enumerate_abelian(spec));
  if (opts.cases[1]) add(enumerate_reducible_nonabelian(spec));
  if (opts.cases[2]) {
    add(enumerate_binary_irreducible(spec, 1, opts, &res.warnings));
    add(enumerate_binary_irreducible(spec, -1, opts, &res.warnings));
  }
  if (opts.cases[3] && spec.mu.zero()) add(enumerate_case_iv(spec, opts, &res.warnings));
  if (opts.cases[4] && !spec.mu.zero()) add(enumerate_case_v(spec, &res.warnings));

  // character collisions across distinct parameter tuples are reported, and
  // merged only on request
  std::vector<RepClass> kept;
  std::vector<std::pair<std::string, size_t>> seen;
  for (RepClass& c : res.classes) {
    std::string key = character_key(c.character);
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& kv) { return kv.first == key; });
    if (it != seen.end()) {
      std::ostringstream os;
      os << "class " << kept.size() << " (case " << rep_case_tag(c.rep_case)
         << ") shares a character vector with class " << it->second
         << " (possible conjugate pair)";
      res.warnings.push_back(os.str());
      if (opts.dedupe_characters) continue;
    } else {
      seen.push_back({key, kept.size()});
    }
    kept.push_back(std::move(c));
  }
  res.classes = std::move(kept);
  return res;
}

}  // namespace montrep
