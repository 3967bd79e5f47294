// mlhd/evaluation.cc

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

#include "mlhd/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <sstream>

namespace mlhd {

std::string method_name(MethodId id) {
  switch (id) {
    case MethodId::kMlhd: return "mlhd";
    case MethodId::kArc: return "arc";
    case MethodId::kCcaNn: return "cca-nn";
    case MethodId::kCcaItml: return "cca-itml";
  }
  throw InputError("method_name: unknown method id");
}

MethodId method_from_name(const std::string& name) {
  if (name == "mlhd") return MethodId::kMlhd;
  if (name == "arc") return MethodId::kArc;
  if (name == "cca-nn") return MethodId::kCcaNn;
  if (name == "cca-itml") return MethodId::kCcaItml;
  throw ConfigError("unknown method '" + name +
                    "' (expected mlhd|arc|cca-nn|cca-itml)");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the combined word.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::pair<double, double> mean_std(const std::vector<double>& values,
                                   bool population) {
  if (values.empty()) throw InputError("mean_std: empty input");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const auto n = static_cast<double>(values.size());
  const double denom = population ? n : std::max(n - 1.0, 1.0);
  return {mean, std::sqrt(ss / denom)};
}

std::uint64_t TrialSplit::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto fold = [&h](const std::vector<int>& v) {
    h = (h ^ 0x811c9dc5ULL) * 0x100000001b3ULL;
    for (int i : v) h = (h ^ static_cast<std::uint64_t>(i)) * 0x100000001b3ULL;
  };
  fold(source_labeled);
  fold(target_labeled);
  fold(target_unlabeled);
  fold(test);
  return h;
}

namespace {

std::map<int, std::vector<int>> IndicesByClass(const DomainData& pool) {
  if (pool.labeled_count() != pool.count())
    throw DataError("evaluation pools must be fully labeled");
  std::map<int, std::vector<int>> by_class;
  for (int i = 0; i < pool.count(); ++i) by_class[pool.label(i)].push_back(i);
  return by_class;
}

}  // namespace

TrialSplit sample_split(const DomainData& x_pool, const DomainData& y_pool,
                        const TrialProtocol& protocol,
                        std::uint64_t trial_seed) {
  if (protocol.n_source_labeled_per_class < 0 ||
      protocol.n_target_labeled_per_class < 0 ||
      protocol.n_target_unlabeled_per_class < 0)
    throw ConfigError("sample_split: negative per-class counts");

  std::mt19937_64 rng(derive_seed(trial_seed, 0));
  auto x_by_class = IndicesByClass(x_pool);
  auto y_by_class = IndicesByClass(y_pool);

  TrialSplit split;
  std::vector<int> test_candidates;
  for (auto& [cls, x_idx] : x_by_class) {
    auto y_it = y_by_class.find(cls);
    if (y_it == y_by_class.end())
      throw DataError("sample_split: class " + std::to_string(cls) +
                      " missing from the target pool");
    std::vector<int>& y_idx = y_it->second;
    if (static_cast<int>(x_idx.size()) < protocol.n_source_labeled_per_class)
      throw DataError("sample_split: class " + std::to_string(cls) +
                      " lacks source samples");
    const int need_y = protocol.n_target_labeled_per_class +
                       protocol.n_target_unlabeled_per_class;
    if (static_cast<int>(y_idx.size()) < need_y)
      throw DataError("sample_split: class " + std::to_string(cls) +
                      " lacks target samples");

    std::shuffle(x_idx.begin(), x_idx.end(), rng);
    std::shuffle(y_idx.begin(), y_idx.end(), rng);
    split.source_labeled.insert(split.source_labeled.end(), x_idx.begin(),
                                x_idx.begin() + protocol.n_source_labeled_per_class);
    auto cut1 = y_idx.begin() + protocol.n_target_labeled_per_class;
    auto cut2 = cut1 + protocol.n_target_unlabeled_per_class;
    split.target_labeled.insert(split.target_labeled.end(), y_idx.begin(), cut1);
    split.target_unlabeled.insert(split.target_unlabeled.end(), cut1, cut2);
    test_candidates.insert(test_candidates.end(), cut2, y_idx.end());
  }

  if (protocol.n_test == kAllRemaining) {
    split.test = std::move(test_candidates);
  } else {
    if (test_candidates.empty())
      throw DataError("sample_split: no samples left for the test set");
    std::shuffle(test_candidates.begin(), test_candidates.end(), rng);
    const int take = std::min<int>(protocol.n_test,
                                   static_cast<int>(test_candidates.size()));
    split.test.assign(test_candidates.begin(), test_candidates.begin() + take);
  }
  return split;
}

std::vector<int> knn_classify(const std::function<double(int, int)>& distance,
                              const std::vector<int>& ref_labels,
                              int n_queries, int k) {
  if (ref_labels.empty()) throw InputError("knn_classify: empty reference set");
  if (k < 1) throw InputError("knn_classify: k must be >= 1");
  const int n_refs = static_cast<int>(ref_labels.size());
  const int kk = std::min(k, n_refs);

  std::vector<int> predictions(n_queries);
  std::vector<std::pair<double, int>> order(n_refs);
  for (int q = 0; q < n_queries; ++q) {
    for (int r = 0; r < n_refs; ++r) order[r] = {distance(q, r), r};
    std::partial_sort(order.begin(), order.begin() + kk, order.end());
    // label -> (votes, summed distance)
    std::map<int, std::pair<int, double>> tally;
    for (int t = 0; t < kk; ++t) {
      auto& slot = tally[ref_labels[order[t].second]];
      slot.first += 1;
      slot.second += order[t].first;
    }
    int best_label = tally.begin()->first;
    auto best = tally.begin()->second;
    for (const auto& [label, slot] : tally) {
      if (slot.first > best.first ||
          (slot.first == best.first && slot.second < best.second))
        best_label = label, best = slot;
    }
    predictions[q] = best_label;
  }
  return predictions;
}

Eigen::VectorXd TrialContext::query(int q) const {
  return y_pool->sample(split.test[q]);
}

int TrialContext::query_label(int q) const {
  return y_pool->label(split.test[q]);
}

namespace {

DomainData Subset(const DomainData& pool, const std::vector<int>& labeled,
                  const std::vector<int>& unlabeled) {
  Eigen::MatrixXd m(pool.dim(),
                    static_cast<Eigen::Index>(labeled.size() + unlabeled.size()));
  std::vector<int> labels;
  labels.reserve(labeled.size());
  Eigen::Index col = 0;
  for (int i : labeled) {
    m.col(col++) = pool.sample(i);
    labels.push_back(pool.label(i));
  }
  for (int i : unlabeled) m.col(col++) = pool.sample(i);
  return {std::move(m), std::move(labels)};
}

TrialContext MakeContext(const DomainData& x_pool, const DomainData& y_pool,
                         const TrialProtocol& protocol,
                         std::uint64_t trial_seed) {
  TrialSplit split = sample_split(x_pool, y_pool, protocol, trial_seed);
  DomainData x_train = Subset(x_pool, split.source_labeled, {});
  DomainData y_train =
      Subset(y_pool, split.target_labeled, split.target_unlabeled);
  return {&x_pool, &y_pool,   std::move(split),
          std::move(x_train), std::move(y_train),
          derive_seed(trial_seed, 1)};
}

std::pair<double, double> ResolveBounds(const TrialContext& ctx,
                                        const MethodHyper& hyper) {
  if (hyper.u > 0.0 && hyper.l > hyper.u) return {hyper.u, hyper.l};
  return estimate_bounds(ctx.x_train, ctx.y_train, hyper.p_low, hyper.p_high);
}

std::vector<int> SourceRefLabels(const TrialContext& ctx) {
  return ctx.x_train.labels();
}

std::vector<int> BothRefLabels(const TrialContext& ctx, bool include_target) {
  std::vector<int> labels = SourceRefLabels(ctx);
  if (include_target)
    for (int j = 0; j < ctx.y_train.labeled_count(); ++j)
      labels.push_back(ctx.y_train.label(j));
  return labels;
}

TrialScorer MlhdScorer(const TrialContext& ctx, const MethodHyper& hyper) {
  const auto [u, l] = ResolveBounds(ctx, hyper);
  const ConstraintSet cs =
      build_constraints(ctx.x_train, ctx.y_train, u, l, hyper.direction);
  const int ns = ctx.x_train.count();

  TrialScorer scorer;
  scorer.ref_labels = BothRefLabels(ctx, hyper.refs_include_target);
  if (hyper.kernelized) {
    auto model = std::make_shared<KernelModel>(
        fit_kernelized(ctx.x_train, ctx.y_train, cs, hyper.solver,
                       hyper.spec_x, hyper.spec_y, hyper.kernel_ridge)
            .first);
    scorer.distance = [model, &ctx, ns](int q, int r) {
      const Eigen::VectorXd yq = ctx.query(q);
      if (r < ns) return cross_distance_oos(*model, ctx.x_train.sample(r), yq);
      return target_distance_oos(*model, ctx.y_train.sample(r - ns), yq);
    };
  } else {
    auto model = std::make_shared<MetricModel>(
        fit(ctx.x_train, ctx.y_train, cs, hyper.solver).first);
    const Eigen::VectorXd zero_x = Eigen::VectorXd::Zero(ctx.x_train.dim());
    scorer.distance = [model, &ctx, ns, zero_x](int q, int r) {
      const Eigen::VectorXd yq = ctx.query(q);
      if (r < ns)
        return squared_distance(*model, make_z(ctx.x_train.sample(r), yq));
      return squared_distance(
          *model, make_z(zero_x, ctx.y_train.sample(r - ns) - yq));
    };
  }
  return scorer;
}

// Class-matched pairing for the CCA baselines: labeled samples of each
// class are shuffled and the smaller side is cycled.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> PairByClass(
    const TrialContext& ctx, std::mt19937_64& rng) {
  std::map<int, std::vector<int>> x_by, y_by;
  for (int i = 0; i < ctx.x_train.labeled_count(); ++i)
    x_by[ctx.x_train.label(i)].push_back(i);
  for (int j = 0; j < ctx.y_train.labeled_count(); ++j)
    y_by[ctx.y_train.label(j)].push_back(j);

  std::vector<std::pair<int, int>> pairs;
  for (auto& [cls, xs] : x_by) {
    auto it = y_by.find(cls);
    if (it == y_by.end()) continue;
    std::vector<int>& ys = it->second;
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    const std::size_t m = std::max(xs.size(), ys.size());
    for (std::size_t t = 0; t < m; ++t)
      pairs.emplace_back(xs[t % xs.size()], ys[t % ys.size()]);
  }
  if (pairs.empty()) throw DataError("cca pairing: no shared classes");

  Eigen::MatrixXd xp(ctx.x_train.dim(), static_cast<Eigen::Index>(pairs.size()));
  Eigen::MatrixXd yp(ctx.y_train.dim(), static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    xp.col(static_cast<Eigen::Index>(t)) = ctx.x_train.sample(pairs[t].first);
    yp.col(static_cast<Eigen::Index>(t)) = ctx.y_train.sample(pairs[t].second);
  }
  return {std::move(xp), std::move(yp)};
}

CcaModel FitTrialCca(const TrialContext& ctx, const MethodHyper& hyper) {
  std::mt19937_64 rng(ctx.method_seed);
  auto [xp, yp] = PairByClass(ctx, rng);
  int d = hyper.cca_dim > 0 ? hyper.cca_dim
                            : static_cast<int>(std::min(xp.rows(), yp.rows()));
  d = std::min<int>(d, static_cast<int>(xp.cols()));
  return fit_cca(xp, yp, d, hyper.cca_ridge);
}

TrialScorer CcaNnScorer(const TrialContext& ctx, const MethodHyper& hyper) {
  auto cca = std::make_shared<CcaModel>(FitTrialCca(ctx, hyper));
  const int ns = ctx.x_train.count();

  TrialScorer scorer;
  scorer.ref_labels = BothRefLabels(ctx, hyper.refs_include_target);
  scorer.distance = [cca, &ctx, ns](int q, int r) {
    const Eigen::VectorXd qc = cca->map_y(ctx.query(q));
    const Eigen::VectorXd rc = (r < ns)
                                   ? cca->map_x(ctx.x_train.sample(r))
                                   : cca->map_y(ctx.y_train.sample(r - ns));
    return (qc - rc).squaredNorm();
  };
  return scorer;
}

TrialScorer CcaItmlScorer(const TrialContext& ctx, const MethodHyper& hyper) {
  auto cca = std::make_shared<CcaModel>(FitTrialCca(ctx, hyper));
  const int d = static_cast<int>(cca->proj_x.cols());

  // Project the training samples into the shared space and rerun the
  // solver there with the discrepancy vector zeroed: plain ITML.
  Eigen::MatrixXd xs(d, ctx.x_train.count());
  for (int i = 0; i < ctx.x_train.count(); ++i)
    xs.col(i) = cca->map_x(ctx.x_train.sample(i));
  Eigen::MatrixXd ys(d, ctx.y_train.count());
  for (int j = 0; j < ctx.y_train.count(); ++j)
    ys.col(j) = cca->map_y(ctx.y_train.sample(j));
  DomainData xd(xs, ctx.x_train.labels());
  DomainData yd(ys, ctx.y_train.labels());

  const auto [u, l] = [&] {
    if (hyper.u > 0.0 && hyper.l > hyper.u)
      return std::pair<double, double>{hyper.u, hyper.l};
    return estimate_bounds(xd, yd, hyper.p_low, hyper.p_high);
  }();
  const ConstraintSet cs = build_constraints(xd, yd, u, l, hyper.direction);

  Eigen::MatrixXd vectors(2 * d, static_cast<Eigen::Index>(cs.constraints.size()));
  for (const PairConstraint& c : cs.constraints)
    vectors.col(c.slack_index) =
        make_z(xd.sample(c.source_index), yd.sample(c.target_index));
  auto [state, report] = solve_cyclic(vectors, Eigen::VectorXd::Zero(2 * d),
                                      cs, hyper.solver);
  auto model = std::make_shared<MetricModel>(d, d, std::move(state.m));

  const int ns = ctx.x_train.count();
  TrialScorer scorer;
  scorer.ref_labels = BothRefLabels(ctx, hyper.refs_include_target);
  const Eigen::VectorXd zero_d = Eigen::VectorXd::Zero(d);
  scorer.distance = [model, cca, &ctx, ns, zero_d](int q, int r) {
    const Eigen::VectorXd qc = cca->map_y(ctx.query(q));
    if (r < ns)
      return squared_distance(*model,
                              make_z(cca->map_x(ctx.x_train.sample(r)), qc));
    return squared_distance(
        *model, make_z(zero_d, cca->map_y(ctx.y_train.sample(r - ns)) - qc));
  };
  return scorer;
}

TrialScorer ArcScorer(const TrialContext& ctx, const MethodHyper& hyper) {
  const auto [u, l] = ResolveBounds(ctx, hyper);
  const ConstraintSet cs = build_constraints(ctx.x_train, ctx.y_train, u, l);
  auto model = std::make_shared<ArcModel>(
      fit_arc(ctx.x_train, ctx.y_train, cs, hyper.arc_lambda, hyper.arc_u,
              hyper.arc_l, hyper.arc_steps, hyper.arc_rate)
          .first);

  // ARC scores cross-domain pairs only, so references are the labeled
  // source samples; higher similarity ranks as smaller distance.
  TrialScorer scorer;
  scorer.ref_labels = SourceRefLabels(ctx);
  scorer.distance = [model, &ctx](int q, int r) {
    return -arc_similarity(*model, ctx.x_train.sample(r), ctx.query(q));
  };
  return scorer;
}

ScorerFactory FactoryFor(MethodId method, const MethodHyper& hyper) {
  switch (method) {
    case MethodId::kMlhd:
      return [hyper](const TrialContext& ctx) { return MlhdScorer(ctx, hyper); };
    case MethodId::kArc:
      return [hyper](const TrialContext& ctx) { return ArcScorer(ctx, hyper); };
    case MethodId::kCcaNn:
      return
          [hyper](const TrialContext& ctx) { return CcaNnScorer(ctx, hyper); };
    case MethodId::kCcaItml:
      return [hyper](const TrialContext& ctx) {
        return CcaItmlScorer(ctx, hyper);
      };
  }
  throw InputError("unknown method id");
}

std::string Snapshot(const TrialProtocol& protocol, const MethodHyper& hyper) {
  std::ostringstream os;
  os << "src_l=" << protocol.n_source_labeled_per_class
     << " tgt_l=" << protocol.n_target_labeled_per_class
     << " tgt_u=" << protocol.n_target_unlabeled_per_class
     << " n_test=" << protocol.n_test << " trials=" << protocol.n_trials
     << " seed=" << protocol.seed << " lambda1=" << hyper.solver.lambda1
     << " lambda2=" << hyper.solver.lambda2 << " t0=" << hyper.solver.t0
     << " k=" << hyper.k;
  return os.str();
}

}  // namespace

double run_trial(const DomainData& x_pool, const DomainData& y_pool,
                 const TrialProtocol& protocol, const ScorerFactory& factory,
                 int k, std::uint64_t trial_seed) {
  const TrialContext ctx = MakeContext(x_pool, y_pool, protocol, trial_seed);
  const TrialScorer scorer = factory(ctx);
  if (ctx.n_queries() == 0)
    throw DataError("run_trial: empty test set");
  const std::vector<int> predicted =
      knn_classify(scorer.distance, scorer.ref_labels, ctx.n_queries(), k);
  int correct = 0;
  for (int q = 0; q < ctx.n_queries(); ++q)
    if (predicted[q] == ctx.query_label(q)) ++correct;
  return static_cast<double>(correct) / ctx.n_queries();
}

double run_trial(const DomainData& x_pool, const DomainData& y_pool,
                 const TrialProtocol& protocol, MethodId method,
                 const MethodHyper& hyper, std::uint64_t trial_seed) {
  return run_trial(x_pool, y_pool, protocol, FactoryFor(method, hyper),
                   hyper.k, trial_seed);
}

std::vector<ExperimentResult> run_experiment(const DomainData& x_pool,
                                             const DomainData& y_pool,
                                             const TrialProtocol& protocol,
                                             const std::vector<MethodId>& methods,
                                             const MethodHyper& hyper) {
  if (protocol.n_trials < 1)
    throw ConfigError("run_experiment: n_trials must be >= 1");
  std::vector<ExperimentResult> results;
  results.reserve(methods.size());
  for (MethodId method : methods) {
    ExperimentResult r;
    r.method_name = method_name(method);
    r.config_snapshot = Snapshot(protocol, hyper);
    for (int trial = 0; trial < protocol.n_trials; ++trial)
      r.per_trial_accuracy.push_back(run_trial(
          x_pool, y_pool, protocol, method, hyper,
          derive_seed(protocol.seed, static_cast<std::uint64_t>(trial))));
    std::tie(r.mean, r.stddev) = mean_std(r.per_trial_accuracy);
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<SweepCell> param_sweep(const DomainData& x_pool,
                                   const DomainData& y_pool,
                                   const TrialProtocol& protocol,
                                   const std::vector<double>& grid_l1,
                                   const std::vector<double>& grid_l2,
                                   const MethodHyper& base_hyper) {
  if (grid_l1.empty() || grid_l2.empty())
    throw ConfigError("param_sweep: grids must be nonempty");
  std::vector<SweepCell> cells;
  cells.reserve(grid_l1.size() * grid_l2.size());
  for (double l1 : grid_l1) {
    for (double l2 : grid_l2) {
      MethodHyper hyper = base_hyper;
      hyper.solver.lambda1 = l1;
      hyper.solver.lambda2 = l2;
      auto results =
          run_experiment(x_pool, y_pool, protocol, {MethodId::kMlhd}, hyper);
      cells.push_back({l1, l2, std::move(results.front())});
    }
  }
  return cells;
}

}  // namespace mlhd
