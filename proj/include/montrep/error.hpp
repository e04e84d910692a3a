#pragma once

#include <stdexcept>
#include <string>

namespace montrep {

enum class Errc {
  parse_error,
  invalid_fraction,
  division_by_zero,
  overflow,
  zero_parameter,
  invalid_parameter,
  singular_matrix,
  not_tracefree,
  inconsistent_trace,
  singular_bracket,
  propagation_order,
  degenerate_parameters,
  no_solution,
  closure_violation,
  unlabeled_arc,
  not_closed,
  used_wrong_case,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace montrep
