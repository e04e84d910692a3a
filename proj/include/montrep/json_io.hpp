#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "montrep/verify.hpp"

namespace montrep {

using json = nlohmann::ordered_json;

// Complex numbers serialize as [re, im], matrices as 2x2 nested arrays of
// such pairs.  Field order is fixed so identical runs emit identical bytes.

json json_of_complex(const cplx& c);
json json_of_mat(const Mat2& m);
cplx complex_of_json(const json& j);
Mat2 mat_of_json(const json& j);

json json_of_class(const RepClass& c);

struct RunOutput {
  const MontesinosSpec& spec;
  const EnumerationResult& enumeration;
  int components = 0;
  int crossings = 0;
  std::vector<VerificationReport> reports;  // one per class
  double tol = 0;
};

json json_of_run(const RunOutput& run);

struct LoadedRun {
  std::string spec_text;
  std::vector<RepClass> classes;  // matrices, case tags and parameters
};

LoadedRun run_of_json(const json& j);

}  // namespace montrep
