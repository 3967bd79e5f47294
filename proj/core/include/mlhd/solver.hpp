// mlhd/solver.hpp
//
// Cyclic Bregman-projection solver for the relaxed model
//
//   min  LogDet(M, I) + lambda1 * LogDet(t, t0) + lambda2 * LogDet(xi, xi0)
//   s.t. z_c' M z_c <= xi_c   (upper-bounded pairs)
//        z_c' M z_c >= xi_c   (lower-bounded pairs)
//        zbar' M zbar <= t
//        M PSD
//
// Each visit solves one equality-constrained subproblem
//   min LogDet(M, M^n) + w * LogDet(s, s^n)  s.t.  v'Mv = s
// in closed form. With p = v'M^n v the stationarity conditions give
//
//   M(a)  = M^n - a / (1 + a p) * (M^n v)(M^n v)'
//   s(a)  = w s^n / (w - a s^n)
//   a*    = w / (1 + w) * (1/s^n - 1/p)
//
// and the applied multiplier is clamped against the constraint's
// accumulated dual so corrections never overshoot past projections.
// The LogDet domain keeps every iterate positive definite.

// Copyright 2026  The MLHD authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MLHD_SOLVER_HPP_
#define MLHD_SOLVER_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <utility>

#include "mlhd/domain.hpp"

namespace mlhd {

struct SolverConfig {
  double lambda1 = 1.0;  // weight of the mean-discrepancy term
  double lambda2 = 1.0;  // weight of the slack term
  double t0 = 1e-3;      // initial discrepancy slack
  int max_cycles = 50;
  double tol = 1e-5;  // relative Frobenius change of M per cycle
  std::uint64_t seed = 0;
  bool shuffle_constraints = false;  // default: fixed ascending visit order

  void validate() const;
};

struct SolverState {
  SymMatrix m;          // current metric, PSD
  Eigen::VectorXd xi;   // per-constraint slacks, > 0
  double t = 0.0;       // discrepancy slack, > 0
  Eigen::VectorXd beta; // accumulated duals per constraint, >= 0
  double zeta = 0.0;    // accumulated dual of the discrepancy constraint

  static SolverState Initial(int order, const ConstraintSet& cs,
                             const SolverConfig& config);
};

struct FitReport {
  int cycles_run = 0;
  double final_objective = 0.0;
  double max_violation = 0.0;
  double mmd_initial = 0.0;
  double mmd_final = 0.0;
  bool converged = false;
};

/// Result of one single-constraint projection.
struct ProjectionOutcome {
  double alpha = 0.0;   // applied signed multiplier; 0 means no-op
  bool clamped = false; // true when the dual budget truncated the step
};

/// Bregman projection of (state.m, state.xi[c]) onto one distance
/// constraint; z must be the pair vector of constraint c. Throws
/// NumericalError if the exact update would lose positive definiteness.
ProjectionOutcome project_distance_constraint(SolverState& state,
                                              const PairConstraint& c,
                                              const Eigen::VectorXd& z,
                                              double lambda2);

/// Bregman projection of (state.m, state.t) onto zbar' M zbar <= t.
ProjectionOutcome project_mmd_constraint(SolverState& state,
                                         const Eigen::VectorXd& zbar,
                                         double lambda1);

/// LogDet(M, I) + lambda1 * LogDet(t, t0) + lambda2 * LogDet(xi, xi0).
double objective(const SolverState& state, const Eigen::VectorXd& zbar,
                 const ConstraintSet& cs, const SolverConfig& config);

/// Largest violation of the inequalities at the current state (0 when all
/// hold within their slacks).
double max_violation(const SolverState& state,
                     const Eigen::MatrixXd& constraint_vectors,
                     const Eigen::VectorXd& zbar, const ConstraintSet& cs);

/// Core loop shared by the linear and kernelized fits: cycles over the
/// distance constraints in slack order (or shuffled when configured), then
/// the discrepancy constraint, until the per-cycle relative Frobenius
/// change of M drops below tol or max_cycles is reached. Column c of
/// `constraint_vectors` is the vector of constraint c.
std::pair<SolverState, FitReport> solve_cyclic(
    const Eigen::MatrixXd& constraint_vectors, const Eigen::VectorXd& zbar,
    const ConstraintSet& cs, const SolverConfig& config);

/// Full linear fit: builds pair vectors from the domains, starts at
/// M = I, xi = xi0, t = t0, duals 0. Non-convergence is reported, not
/// thrown.
std::pair<MetricModel, FitReport> fit(const DomainData& x,
                                      const DomainData& y,
                                      const ConstraintSet& cs,
                                      const SolverConfig& config);

}  // namespace mlhd

#endif  // MLHD_SOLVER_HPP_
