#include "montrep/json_io.hpp"

#include <algorithm>

namespace montrep {

json json_of_complex(const cplx& c) { return json::array({c.real(), c.imag()}); }

json json_of_mat(const Mat2& m) {
  return json::array({json::array({json_of_complex(m(0, 0)), json_of_complex(m(0, 1))}),
                      json::array({json_of_complex(m(1, 0)), json_of_complex(m(1, 1))})});
}

cplx complex_of_json(const json& j) { return cplx(j.at(0).get<double>(), j.at(1).get<double>()); }

Mat2 mat_of_json(const json& j) {
  return make_mat(complex_of_json(j.at(0).at(0)), complex_of_json(j.at(0).at(1)),
                  complex_of_json(j.at(1).at(0)), complex_of_json(j.at(1).at(1)));
}

json json_of_class(const RepClass& c) {
  json params = json::object();
  switch (c.rep_case) {
    case RepCase::abelian:
    case RepCase::reducible_nonabelian:
      params["a_sign"] = c.a_sign;
      params["s_signs"] = c.s_signs;
      if (c.rep_case == RepCase::reducible_nonabelian)
        params["y1"] = c.y1_variant == 0 ? "S" : "S'";
      break;
    case RepCase::irreducible_binary: {
      params["a_sign"] = c.a_sign;
      params["n_list"] = c.n_list;
      json ls = json::array();
      for (const cplx& l : c.lambdas) ls.push_back(json_of_complex(l));
      params["lambdas"] = ls;
      params["sample"] = c.sample_index;
      break;
    }
    case RepCase::irreducible_mu0:
      params["n"] = c.n;
      params["n_list"] = c.n_list;
      params["sample"] = c.sample_index;
      break;
    case RepCase::irreducible_muN:
      params["n"] = c.n;
      params["n_list"] = c.n_list;
      params["theta"] = c.theta;
      break;
  }

  json X = json::array(), Y = json::array();
  for (const Mat2& m : c.X) X.push_back(json_of_mat(m));
  for (const Mat2& m : c.Y) Y.push_back(json_of_mat(m));
  json ch = json::array();
  for (const cplx& t : c.character) ch.push_back(json_of_complex(t));
  json s = json::array();
  for (const cplx& v : c.s) s.push_back(json_of_complex(v));

  json out = json::object();
  out["case"] = rep_case_tag(c.rep_case);
  out["params"] = params;
  out["a"] = json_of_complex(c.a);
  out["s"] = s;
  out["matrices"] = json::object({{"X", X}, {"Y", Y}});
  out["character"] = ch;
  out["residual"] = c.residual;
  out["irreducible"] = c.irreducible;
  return out;
}

json json_of_run(const RunOutput& run) {
  json fractions = json::array();
  for (const TangleData& td : run.spec.tangles)
    fractions.push_back(json::array({td.p, td.q}));
  json expansions = json::array();
  json tildes = json::array();
  for (const TangleData& td : run.spec.tangles) {
    expansions.push_back(td.ks);
    tildes.push_back(json::array({td.pt, td.qt}));
  }

  json classes = json::array();
  double max_res = 0;
  bool pass = true;
  for (size_t i = 0; i < run.enumeration.classes.size(); ++i) {
    json jc = json_of_class(run.enumeration.classes[i]);
    if (i < run.reports.size()) {
      jc["verify_residual"] = run.reports[i].max_residual();
      jc["verified"] = run.reports[i].pass;
      max_res = std::max(max_res, run.reports[i].max_residual());
      pass = pass && run.reports[i].pass;
    }
    classes.push_back(std::move(jc));
  }

  json out = json::object();
  out["schema"] = 1;
  out["link"] = json::object({{"spec", run.spec.text},
                              {"fractions", fractions},
                              {"components", run.components},
                              {"crossings", run.crossings}});
  out["mu"] = run.spec.mu.str();
  out["mu_numerator"] = run.spec.mu.p;
  out["expansions"] = expansions;
  out["tildes"] = tildes;
  out["classes"] = classes;
  out["warnings"] = run.enumeration.warnings;
  out["report"] = json::object({{"pass", pass},
                                {"max_residual", max_res},
                                {"tol", run.tol},
                                {"classes_checked", run.reports.size()}});
  return out;
}

LoadedRun run_of_json(const json& j) {
  if (!j.contains("schema") || j.at("schema").get<int>() != 1)
    fail(Errc::parse_error, "unsupported schema");
  LoadedRun run;
  run.spec_text = j.at("link").at("spec").get<std::string>();
  for (const json& jc : j.at("classes")) {
    RepClass c;
    std::string tag = jc.at("case").get<std::string>();
    if (tag == "i") c.rep_case = RepCase::abelian;
    else if (tag == "ii") c.rep_case = RepCase::reducible_nonabelian;
    else if (tag == "iii") c.rep_case = RepCase::irreducible_binary;
    else if (tag == "iv") c.rep_case = RepCase::irreducible_mu0;
    else if (tag == "v") c.rep_case = RepCase::irreducible_muN;
    else fail(Errc::parse_error, "unknown case tag " + tag);
    c.a = complex_of_json(jc.at("a"));
    for (const json& js : jc.at("s")) c.s.push_back(complex_of_json(js));
    for (const json& jm : jc.at("matrices").at("X")) c.X.push_back(mat_of_json(jm));
    for (const json& jm : jc.at("matrices").at("Y")) c.Y.push_back(mat_of_json(jm));
    for (const json& jt : jc.at("character")) c.character.push_back(complex_of_json(jt));
    c.residual = jc.at("residual").get<double>();
    run.classes.push_back(std::move(c));
  }
  return run;
}

}  // namespace montrep
