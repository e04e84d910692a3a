#pragma once

#include <utility>
#include <vector>

#include "montrep/enumerate.hpp"

namespace montrep {

// Brute-force check of a labeled diagram.  Uses only the crossing rule
// rho(out) = rho(over) rho(in) rho(over)^{-1}, the per-arc tracefree and
// determinant constraints, and the closure joins; it never touches the
// closed-form end machinery, so it is an independent oracle for it.
struct VerificationReport {
  double max_crossing_residual = 0;
  double max_tracefree_residual = 0;
  double max_det_residual = 0;
  double closure_residual = 0;
  std::vector<double> per_crossing;
  double tol = 0;
  bool pass = false;

  double max_residual() const;
};

VerificationReport verify_representation(const Diagram& d, const RepAssignment& asg, double tol);

// Link components of a closed diagram, by strand-following through crossings
// and closure joins.
int count_components(const Diagram& d);

// Closure defect of the transfer chain at a = e^{i theta} with the given
// root labels: max-abs of (product of per-tangle transfers) - identity.
// Returns +infinity where a transfer is undefined.
double closure_residual_at(const MontesinosSpec& spec, double theta,
                           const std::vector<i64>& n_list);

// Uniform theta grid over [0, 2pi).
std::vector<std::pair<double, double>> scan_closure_residual(const MontesinosSpec& spec, int grid,
                                                             const std::vector<i64>& n_list);

// Grid local minima refined by ternary search, filtered below tol.
std::vector<std::pair<double, double>> find_residual_minima(const MontesinosSpec& spec, int grid,
                                                            const std::vector<i64>& n_list,
                                                            double tol);

// Assignment from a class's generating pairs, then the diagram-level check.
VerificationReport verify_class(const MontesinosSpec& spec, const Diagram& d, const RepClass& rep,
                                double tol);

}  // namespace montrep
