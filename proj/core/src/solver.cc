// mlhd/solver.cc

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

#include "mlhd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace mlhd {

namespace {

// One equality projection with dual clamping. `side` is +1 when the
// squared form is bounded above by the slack, -1 when below. Returns the
// applied signed multiplier.
ProjectionOutcome ProjectOne(SymMatrix& m, double& slack, double& dual,
                             int side, const Eigen::VectorXd& v, double weight,
                             const std::string& what) {
  const double p = m.quad_form(v);
  const double s = static_cast<double>(side);

  if (p <= 0.0) {
    // v is (numerically) in the null space of M: the form cannot move.
    if (side < 0)
      throw NumericalError(what + ": lower bound unreachable, v'Mv = " +
                           std::to_string(p));
    if (dual == 0.0) return {0.0, false};
    // Unwind the accumulated dual; M is untouched since Mv ~ 0.
    const double alpha = -s * dual;
    slack = weight * slack / (weight - alpha * slack);
    dual = 0.0;
    return {alpha, true};
  }

  const double alpha_full = weight / (1.0 + weight) * (1.0 / slack - 1.0 / p);
  const double step_cand = s * alpha_full;       // unsigned-dual step
  const double step = std::max(step_cand, -dual);  // keep dual >= 0
  const double alpha = s * step;
  if (alpha == 0.0) return {0.0, false};

  const double m_den = 1.0 + alpha * p;
  if (m_den <= 0.0)
    throw NumericalError(what + ": update would lose positive definiteness" +
                         " (1 + alpha p = " + std::to_string(m_den) + ")");
  const double xi_den = weight - alpha * slack;
  if (xi_den <= 0.0)
    throw NumericalError(what + ": slack update diverged");

  slack = weight * slack / xi_den;
  m = sandwich_rank_one(m, v, -alpha / m_den);
  dual += step;
  return {alpha, step != step_cand};
}

std::string ConstraintName(const PairConstraint& c) {
  return "constraint (" + std::to_string(c.source_index) + "," +
         std::to_string(c.target_index) + ")";
}

}  // namespace

void SolverConfig::validate() const {
  if (lambda1 <= 0.0 || lambda2 <= 0.0)
    throw ConfigError("SolverConfig: lambda1 and lambda2 must be positive");
  if (t0 <= 0.0) throw ConfigError("SolverConfig: t0 must be positive");
  if (max_cycles < 1) throw ConfigError("SolverConfig: max_cycles must be >= 1");
  if (tol <= 0.0 || tol >= 1.0)
    throw ConfigError("SolverConfig: tol must lie in (0, 1)");
}

SolverState SolverState::Initial(int order, const ConstraintSet& cs,
                                 const SolverConfig& config) {
  SolverState st{SymMatrix::Identity(order), cs.xi0, config.t0,
                 Eigen::VectorXd::Zero(cs.xi0.size()), 0.0};
  return st;
}

ProjectionOutcome project_distance_constraint(SolverState& state,
                                              const PairConstraint& c,
                                              const Eigen::VectorXd& z,
                                              double lambda2) {
  if (c.slack_index < 0 || c.slack_index >= state.xi.size())
    throw InputError("project_distance_constraint: bad slack index");
  const int side = (c.bound == BoundSide::kUpper) ? +1 : -1;
  return ProjectOne(state.m, state.xi[c.slack_index],
                    state.beta[c.slack_index], side, z, lambda2,
                    ConstraintName(c));
}

ProjectionOutcome project_mmd_constraint(SolverState& state,
                                         const Eigen::VectorXd& zbar,
                                         double lambda1) {
  return ProjectOne(state.m, state.t, state.zeta, +1, zbar, lambda1,
                    "mmd constraint");
}

double objective(const SolverState& state, const Eigen::VectorXd& zbar,
                 const ConstraintSet& cs, const SolverConfig& config) {
  (void)zbar;
  const double logdet_m =
      state.m.trace() - logdet_psd(state.m) - state.m.order();
  const double t_term = state.t / config.t0 - std::log(state.t / config.t0) -
                        1.0;
  return logdet_m + config.lambda1 * t_term +
         config.lambda2 * logdet_div_vector(state.xi, cs.xi0);
}

double max_violation(const SolverState& state,
                     const Eigen::MatrixXd& constraint_vectors,
                     const Eigen::VectorXd& zbar, const ConstraintSet& cs) {
  double worst = 0.0;
  for (const PairConstraint& c : cs.constraints) {
    const double d = state.m.quad_form(constraint_vectors.col(c.slack_index));
    const double xi = state.xi[c.slack_index];
    const double gap = (c.bound == BoundSide::kUpper) ? d - xi : xi - d;
    worst = std::max(worst, gap);
  }
  if (zbar.size() == state.m.order())
    worst = std::max(worst, state.m.quad_form(zbar) - state.t);
  return worst;
}

std::pair<SolverState, FitReport> solve_cyclic(
    const Eigen::MatrixXd& constraint_vectors, const Eigen::VectorXd& zbar,
    const ConstraintSet& cs, const SolverConfig& config) {
  config.validate();
  const int order = static_cast<int>(constraint_vectors.rows());
  const int n = static_cast<int>(cs.constraints.size());
  if (constraint_vectors.cols() != n)
    throw InputError("solve_cyclic: one column per constraint required");
  if (zbar.size() != order)
    throw InputError("solve_cyclic: zbar has wrong dimension");
  for (const PairConstraint& c : cs.constraints)
    if (c.slack_index < 0 || c.slack_index >= n)
      throw InputError("solve_cyclic: slack index out of range");

  SolverState state = SolverState::Initial(order, cs, config);
  FitReport report;
  report.mmd_initial = zbar.squaredNorm();

  std::vector<int> visit(n);
  std::iota(visit.begin(), visit.end(), 0);
  std::mt19937_64 rng(config.seed);

  bool converged = false;
  int cycle = 0;
  while (cycle < config.max_cycles && !converged) {
    if (config.shuffle_constraints)
      std::shuffle(visit.begin(), visit.end(), rng);
    const SymMatrix previous = state.m;
    for (int idx : visit) {
      const PairConstraint& c = cs.constraints[idx];
      project_distance_constraint(state, c,
                                  constraint_vectors.col(c.slack_index),
                                  config.lambda2);
    }
    project_mmd_constraint(state, zbar, config.lambda1);
    ++cycle;
    const double delta = SymMatrix::frobenius_distance(state.m, previous);
    converged = delta < config.tol * state.m.frobenius_norm();
  }

  report.cycles_run = cycle;
  report.converged = converged;
  report.final_objective = objective(state, zbar, cs, config);
  report.max_violation = max_violation(state, constraint_vectors, zbar, cs);
  report.mmd_final = state.m.quad_form(zbar);
  return {std::move(state), report};
}

std::pair<MetricModel, FitReport> fit(const DomainData& x, const DomainData& y,
                                      const ConstraintSet& cs,
                                      const SolverConfig& config) {
  const int order = x.dim() + y.dim();
  const int n = static_cast<int>(cs.constraints.size());
  Eigen::MatrixXd vectors(order, n);
  for (const PairConstraint& c : cs.constraints) {
    if (c.source_index < 0 || c.source_index >= x.labeled_count() ||
        c.target_index < 0 || c.target_index >= y.labeled_count())
      throw InputError("fit: constraint references an unlabeled sample");
    vectors.col(c.slack_index) =
        make_z(x.sample(c.source_index), y.sample(c.target_index));
  }
  auto [state, report] = solve_cyclic(vectors, mmd_vector(x, y), cs, config);
  return {MetricModel(x.dim(), y.dim(), std::move(state.m)), report};
}

}  // namespace mlhd
