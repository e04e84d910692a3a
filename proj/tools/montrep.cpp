#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "montrep/json_io.hpp"

using namespace montrep;

namespace {

double default_tol() {
  if (const char* env = std::getenv("MONTREP_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 1e-8;
}

MontesinosSpec parse_spec_arg(const std::string& text) {
  ParseResult pr = parse_tangle(text);
  auto* m = std::get_if<ParsedMontesinos>(&pr);
  if (!m) fail(Errc::parse_error, "expected a Montesinos spec M(p1/q1,...)");
  return make_spec(m->fractions, text);
}

cplx parse_complex_arg(const std::string& s) {
  std::istringstream is(s);
  double re = 0, im = 0;
  char comma = 0;
  is >> re;
  if (is >> comma && comma == ',') is >> im;
  return {re, im};
}

void emit(const json& j, const std::string& json_path, bool json_stdout,
          const std::string& text_summary) {
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << j.dump(1) << "\n";
  }
  if (json_stdout)
    std::cout << j.dump(1) << "\n";
  else
    std::cout << text_summary;
}

std::string class_line(size_t idx, const RepClass& c, double verify_residual) {
  std::ostringstream os;
  os << "  [" << idx << "] case " << rep_case_tag(c.rep_case);
  switch (c.rep_case) {
    case RepCase::abelian:
    case RepCase::reducible_nonabelian: {
      os << " a=" << c.a_sign << " s=(";
      for (size_t i = 0; i < c.s_signs.size(); ++i) os << (i ? "," : "") << c.s_signs[i];
      os << ")";
      if (c.rep_case == RepCase::reducible_nonabelian) os << " Y1=" << (c.y1_variant ? "S'" : "S");
      break;
    }
    case RepCase::irreducible_binary: {
      os << " a=" << c.a_sign << " n=(";
      for (size_t i = 0; i < c.n_list.size(); ++i) os << (i ? "," : "") << c.n_list[i];
      os << ") sample=" << c.sample_index;
      break;
    }
    case RepCase::irreducible_mu0: {
      os << " n=" << c.n << " n_l=(";
      for (size_t i = 0; i < c.n_list.size(); ++i) os << (i ? "," : "") << c.n_list[i];
      os << ") sample=" << c.sample_index;
      break;
    }
    case RepCase::irreducible_muN: {
      os << " n=" << c.n << " n_l=(";
      for (size_t i = 0; i < c.n_list.size(); ++i) os << (i ? "," : "") << c.n_list[i];
      os << ") theta=" << c.theta;
      break;
    }
  }
  os << " residual=" << verify_residual << "\n";
  return os.str();
}

int cmd_enum(const std::string& spec_text, const std::string& cases_csv, double tol, int samples,
             std::uint64_t seed, const std::vector<std::string>& a_args,
             const std::string& json_path, bool json_stdout, const std::string& dedupe) {
  MontesinosSpec spec = parse_spec_arg(spec_text);
  EnumerateOptions opts;
  opts.tol = tol;
  opts.samples = samples;
  opts.seed = seed;
  opts.dedupe_characters = dedupe == "characters";
  for (const std::string& s : a_args) opts.extra_a.push_back(parse_complex_arg(s));
  if (!cases_csv.empty()) {
    for (bool& c : opts.cases) c = false;
    std::istringstream is(cases_csv);
    std::string item;
    while (std::getline(is, item, ',')) {
      if (item == "i") opts.cases[0] = true;
      else if (item == "ii") opts.cases[1] = true;
      else if (item == "iii") opts.cases[2] = true;
      else if (item == "iv") opts.cases[3] = true;
      else if (item == "v") opts.cases[4] = true;
      else fail(Errc::parse_error, "unknown case tag " + item);
    }
  }

  EnumerationResult res = enumerate_all(spec, opts);
  Diagram d = build_montesinos_diagram(spec.tangles);

  RunOutput run{spec, res, count_components(d), int(d.crossings.size()), {}, tol};
  bool all_pass = true;
  for (const RepClass& c : res.classes) {
    run.reports.push_back(verify_class(spec, d, c, tol));
    all_pass = all_pass && run.reports.back().pass;
  }

  std::ostringstream text;
  text << spec.text << ": mu = " << spec.mu.str() << ", " << d.crossings.size() << " crossings, "
       << run.components << " component(s)\n";
  int counts[5] = {0, 0, 0, 0, 0};
  for (size_t i = 0; i < res.classes.size(); ++i) {
    counts[int(res.classes[i].rep_case)]++;
    text << class_line(i, res.classes[i], run.reports[i].max_residual());
  }
  text << "totals: i=" << counts[0] << " ii=" << counts[1] << " iii=" << counts[2]
       << " iv=" << counts[3] << " v=" << counts[4] << "\n";
  for (const std::string& w : res.warnings) text << "warning: " << w << "\n";
  text << (all_pass ? "all classes verified" : "VERIFICATION FAILED") << " at tol " << tol << "\n";

  emit(json_of_run(run), json_path, json_stdout, text.str());
  return all_pass ? 0 : 1;
}

int cmd_verify(const std::string& from_json, double tol) {
  std::ifstream in(from_json);
  if (!in) fail(Errc::parse_error, "cannot open " + from_json);
  json j = json::parse(in);
  LoadedRun run = run_of_json(j);
  MontesinosSpec spec = parse_spec_arg(run.spec_text);
  Diagram d = build_montesinos_diagram(spec.tangles);
  bool all_pass = true;
  for (size_t i = 0; i < run.classes.size(); ++i) {
    VerificationReport rep = verify_class(spec, d, run.classes[i], tol);
    std::cout << "class " << i << ": " << (rep.pass ? "pass" : "FAIL")
              << " residual=" << rep.max_residual() << "\n";
    all_pass = all_pass && rep.pass;
  }
  std::cout << (all_pass ? "all classes verified" : "VERIFICATION FAILED") << " at tol " << tol
            << "\n";
  return all_pass ? 0 : 1;
}

int cmd_scan(const std::string& spec_text, int grid, const std::string& ntuple, double tol,
             const std::string& json_path, bool json_stdout) {
  MontesinosSpec spec = parse_spec_arg(spec_text);
  std::vector<i64> n(size_t(spec.r()), 0);
  if (!ntuple.empty()) {
    std::istringstream is(ntuple);
    std::string item;
    size_t i = 0;
    while (std::getline(is, item, ',') && i < n.size()) n[i++] = std::stoll(item);
  }
  auto table = scan_closure_residual(spec, grid, n);
  auto minima = find_residual_minima(spec, grid, n, 1e-6);

  json jt = json::array();
  for (auto& [theta, res] : table)
    jt.push_back(json::array({theta, std::isfinite(res) ? json(res) : json("inf")}));
  json jm = json::array();
  for (auto& [theta, res] : minima) jm.push_back(json::array({theta, res}));
  json out = json::object({{"schema", 1},
                           {"link", spec.text},
                           {"grid", grid},
                           {"n_list", n},
                           {"minima", jm},
                           {"residuals", jt}});

  std::ostringstream text;
  text << spec.text << " scan over " << grid << " points, n_l = (";
  for (size_t i = 0; i < n.size(); ++i) text << (i ? "," : "") << n[i];
  text << ")\n";
  for (auto& [theta, res] : minima) text << "  minimum near theta=" << theta << " residual=" << res << "\n";
  if (minima.empty()) text << "  no sub-1e-6 minima\n";
  emit(out, json_path, json_stdout, text.str());
  (void)tol;
  return 0;
}

int cmd_tangle_ends(const std::string& expr_text, const std::string& s_arg) {
  ParseResult pr = parse_tangle(expr_text);
  auto* t = std::get_if<ParsedTangle>(&pr);
  if (!t) fail(Errc::parse_error, "expected a tangle expression");
  if (!t->rational_ks)
    fail(Errc::parse_error, "end formulas need a rational tangle ([k], [1/k] or [[...]])");
  TangleData td = make_tangle_data(*t->rational_ks);
  cplx s = s_arg.empty() ? cplx(0.6, 0.8) : parse_complex_arg(s_arg);
  Mat2 X = mat_A(1.0), Y = mat_A(s);
  TangleEnds ends = ends_closed_form(td, X, Y, s);

  std::cout << "fraction " << td.p << "/" << td.q << ", companion " << td.pt << "/" << td.qt
            << ", expansion [";
  for (size_t i = 0; i < td.ks.size(); ++i) std::cout << (i ? "," : "") << td.ks[i];
  std::cout << "]\n";
  auto show = [&](const char* name, const Mat2& m) {
    std::cout << name << " = [[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", "
              << m(1, 1) << "]]\n";
  };
  std::cout << "X = A(1), Y = A(" << s << ")\n";
  show("nw", ends.nw);
  show("ne", ends.ne);
  show("sw", ends.sw);
  show("se", ends.se);
  return 0;
}

int cmd_components(const std::string& spec_text) {
  MontesinosSpec spec = parse_spec_arg(spec_text);
  Diagram d = build_montesinos_diagram(spec.tangles);
  std::cout << count_components(d) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tracefree rank-2 complex representations of Montesinos links"};
  app.require_subcommand(1);

  double tol = default_tol();
  std::string spec_text, cases_csv, json_path, dedupe, from_json, ntuple, s_arg;
  std::vector<std::string> a_args;
  std::string format = "text";
  int samples = 3, grid = 10000;
  std::uint64_t seed = 12345;

  CLI::App* c_enum = app.add_subcommand("enum", "enumerate conjugacy classes");
  c_enum->add_option("spec", spec_text, "link spec, e.g. M(2/1,3/1,7/1)")->required();
  c_enum->add_option("--cases", cases_csv, "subset of i,ii,iii,iv,v");
  c_enum->add_option("--tol", tol, "verification tolerance");
  c_enum->add_option("--samples", samples, "free-parameter samples per tuple");
  c_enum->add_option("--seed", seed, "seed for sampled parameters");
  c_enum->add_option("--a", a_args, "extra a samples as re,im (repeatable)");
  c_enum->add_option("--json", json_path, "write JSON output to this path");
  c_enum->add_option("--format", format, "text|json on stdout");
  c_enum->add_option("--dedupe", dedupe, "'characters' merges character collisions");

  CLI::App* c_verify = app.add_subcommand("verify", "re-verify classes from a JSON run");
  c_verify->add_option("--from-json", from_json, "JSON produced by enum")->required();
  c_verify->add_option("--tol", tol, "verification tolerance");

  CLI::App* c_scan = app.add_subcommand("scan", "theta-grid closure residual scan");
  c_scan->add_option("spec", spec_text, "link spec")->required();
  c_scan->add_option("--grid", grid, "number of grid points");
  c_scan->add_option("--ntuple", ntuple, "comma-separated root labels, default zeros");
  c_scan->add_option("--json", json_path, "write JSON output to this path");
  c_scan->add_option("--format", format, "text|json on stdout");

  CLI::App* c_ends = app.add_subcommand("tangle-ends", "closed-form end matrices of a rational tangle");
  c_ends->add_option("expr", spec_text, "tangle expression, e.g. [[2,3]]")->required();
  c_ends->add_option("--s", s_arg, "trace parameter s as re,im");

  CLI::App* c_comp = app.add_subcommand("components", "link component count");
  c_comp->add_option("spec", spec_text, "link spec")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_enum))
      return cmd_enum(spec_text, cases_csv, tol, samples, seed, a_args, json_path,
                      format == "json", dedupe);
    if (app.got_subcommand(c_verify)) return cmd_verify(from_json, tol);
    if (app.got_subcommand(c_scan))
      return cmd_scan(spec_text, grid, ntuple, tol, json_path, format == "json");
    if (app.got_subcommand(c_ends)) return cmd_tangle_ends(spec_text, s_arg);
    if (app.got_subcommand(c_comp)) return cmd_components(spec_text);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::parse_error:
      case Errc::invalid_fraction:
      case Errc::invalid_parameter:
      case Errc::division_by_zero:
      case Errc::overflow:
        return 2;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
