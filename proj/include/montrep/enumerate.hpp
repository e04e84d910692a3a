#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "montrep/tangle.hpp"

namespace montrep {

struct MontesinosSpec {
  std::vector<Fraction> fractions;  // reduced input fractions
  std::vector<TangleData> tangles;  // canonical data, p > 0
  Fraction mu;                      // sum of q_l / p_l
  i64 mu_num_abs = 0;
  std::string text;

  int r() const { return int(tangles.size()); }
};

MontesinosSpec make_spec(const std::vector<Fraction>& fractions, std::string text = "");

enum class RepCase {
  abelian,                // (i)
  reducible_nonabelian,   // (ii)
  irreducible_binary,     // (iii): -tr_h = +-2
  irreducible_mu0,        // (iv)
  irreducible_muN,        // (v)
};

const char* rep_case_tag(RepCase c);    // "i" .. "v"
const char* rep_case_label(RepCase c);

struct RepClass {
  RepCase rep_case = RepCase::abelian;
  cplx a;
  std::vector<cplx> s;

  // discrete parameters, case dependent
  int a_sign = 0;            // i/ii/iii
  std::vector<int> s_signs;  // i/ii
  int y1_variant = -1;       // ii: 0 = S, 1 = S'
  std::vector<i64> n_list;   // iii (root labels), iv, v
  i64 n = 0;                 // iv/v
  double theta = 0.0;        // v
  std::vector<cplx> lambdas; // iii free parameters (recorded verbatim)
  int sample_index = 0;      // iii/iv

  std::vector<Mat2> X, Y;    // per-tangle generating pairs, X[0] = A(1)
  std::vector<TangleEnds> ends;
  std::vector<cplx> character;
  double residual = 0.0;     // forward-chain closure defect
  bool irreducible = false;
};

// s_l on the p-th root family selected by a = |a| e^{i theta} and the label n:
// s = |a|^{1/p} exp(i (theta + pt*pi + 2n*pi) / p), so (-1)^pt s^p = a.
cplx s_from_theta(const TangleData& td, double abs_a, double theta, i64 n);

struct CaseIvTuple {
  i64 n = 0;
  std::vector<i64> n_list;
};

struct CaseVTuple {
  i64 n = 0;
  std::vector<i64> n_list;
  double theta = 0.0;
  cplx a;
};

// Integer tuples (n, n_1..n_r), 0 <= n_l < p_l, with
// sum (2 n_l q_l + 1)/p_l = 2n + r as an exact rational identity.
std::vector<CaseIvTuple> enumerate_tuples_mu_zero(const MontesinosSpec& spec);

// Tuples with 0 <= n < |N(mu)| whose defect 2n + r - sum(...) is not an
// integral multiple of mu; theta and a = e^{i theta} attached.
std::vector<CaseVTuple> enumerate_tuples_mu_nonzero(const MontesinosSpec& spec);

struct BuildSeed {
  std::optional<Mat2> Y1;               // cases i/ii/iv/v
  std::optional<std::vector<Mat2>> Xs;  // case iii: prescribed X_1..X_r
};

// Chains the closed-form ends around the stack: X_{l+1} = -sw_l, the next Y
// recovered from ne_{l+1} = -se_l, closure checked against (X_1, ne_1).
RepClass build_representation(const MontesinosSpec& spec, cplx a, const std::vector<cplx>& s,
                              const BuildSeed& seed, double closure_tol = 1e-6);

// Conjugation-invariant fingerprint: tr(X_l X_{l+1}), tr(X_l Y_l), tr(X1 Y1 X2).
std::vector<cplx> character_vector(const RepClass& rep);

struct EnumerateOptions {
  bool cases[5] = {true, true, true, true, true};
  int samples = 3;            // case iii free-parameter samples per tuple
  std::uint64_t seed = 12345;
  std::vector<cplx> extra_a;  // case iv additions to the default sample set
  double tol = 1e-8;
  bool dedupe_characters = false;
};

std::vector<cplx> default_a_samples();

std::vector<RepClass> enumerate_abelian(const MontesinosSpec& spec);
std::vector<RepClass> enumerate_reducible_nonabelian(const MontesinosSpec& spec);
std::vector<RepClass> enumerate_binary_irreducible(const MontesinosSpec& spec, int a_sign,
                                                   const EnumerateOptions& opts,
                                                   std::vector<std::string>* warnings);
std::vector<RepClass> enumerate_case_iv(const MontesinosSpec& spec, const EnumerateOptions& opts,
                                        std::vector<std::string>* warnings);
std::vector<RepClass> enumerate_case_v(const MontesinosSpec& spec,
                                       std::vector<std::string>* warnings);

struct EnumerationResult {
  std::vector<RepClass> classes;
  std::vector<std::string> warnings;
};

EnumerationResult enumerate_all(const MontesinosSpec& spec, const EnumerateOptions& opts);

}  // namespace montrep
