// tools/mlhd_main.cc
//
// Command-line surface: toy-data generation, training, evaluation, the
// trial protocol, the parameter sweep, and common-space embedding dumps.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.

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

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mlhd/dataio.hpp"
#include "mlhd/evaluation.hpp"
#include "mlhd/model_io.hpp"
#include "mlhd/toy.hpp"

namespace {

using namespace mlhd;

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> values;
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream is(normalized);
  double v = 0.0;
  while (is >> v) values.push_back(v);
  if (values.empty())
    throw ConfigError("empty value grid '" + text + "'");
  return values;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void PrintReport(const FitReport& report) {
  std::cout << "cycles_run=" << report.cycles_run << "\n"
            << "converged=" << (report.converged ? "true" : "false") << "\n"
            << "final_objective=" << FormatDouble(report.final_objective)
            << "\n"
            << "max_violation=" << FormatDouble(report.max_violation) << "\n"
            << "mmd_initial=" << FormatDouble(report.mmd_initial) << "\n"
            << "mmd_final=" << FormatDouble(report.mmd_final) << "\n";
}

// Options shared by fit / experiment / sweep.
struct HyperFlags {
  double lambda1 = 1.0, lambda2 = 1.0, t0 = 1e-3, tol = 1e-5;
  int max_cycles = 50;
  std::uint64_t seed = 0;
  std::string kernel;  // "", "linear", "rbf"
  double gamma = 0.0;
  double ridge = -1.0;
  double u = -1.0, l = -1.0, p_low = 5.0, p_high = 95.0;
  bool literal_constraints = false;
  int k = 1;
  std::string refs = "both";
  int cca_dim = 0;
  double cca_ridge = -1.0;
  double arc_lambda = 1.0, arc_l = 1.0, arc_u = -1.0, arc_rate = 1e-3;
  int arc_steps = 300;

  void Register(CLI::App* cmd, bool with_method_extras) {
    cmd->add_option("--lambda1", lambda1, "MMD term weight");
    cmd->add_option("--lambda2", lambda2, "slack term weight");
    cmd->add_option("--t0", t0, "initial MMD slack");
    cmd->add_option("--tol", tol, "relative convergence threshold");
    cmd->add_option("--max-cycles", max_cycles, "projection cycle budget");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--kernel", kernel, "kernelized variant: linear|rbf")
        ->check(CLI::IsMember({"linear", "rbf"}));
    cmd->add_option("--gamma", gamma, "RBF width (0 = median heuristic)");
    cmd->add_option("--ridge", ridge, "Gram ridge (<0 = default)");
    cmd->add_option("--u", u, "same-class distance bound");
    cmd->add_option("--l", l, "different-class distance bound");
    cmd->add_option("--p-low", p_low, "lower bound percentile");
    cmd->add_option("--p-high", p_high, "upper bound percentile");
    cmd->add_flag("--literal-constraints", literal_constraints,
                  "audit mode: keep the printed constraint directions");
    if (with_method_extras) {
      cmd->add_option("--k", k, "nearest neighbors");
      cmd->add_option("--refs", refs, "reference set: source|both")
          ->check(CLI::IsMember({"source", "both"}));
      cmd->add_option("--cca-dim", cca_dim, "shared-space dimension (0=auto)");
      cmd->add_option("--cca-ridge", cca_ridge, "CCA ridge (<0 = default)");
      cmd->add_option("--arc-lambda", arc_lambda, "ARC hinge weight");
      cmd->add_option("--arc-l", arc_l, "ARC same-class similarity floor");
      cmd->add_option("--arc-u", arc_u, "ARC different-class ceiling");
      cmd->add_option("--arc-steps", arc_steps, "ARC gradient steps");
      cmd->add_option("--arc-rate", arc_rate, "ARC step size");
    }
  }

  MethodHyper ToHyper() const {
    MethodHyper h;
    h.solver.lambda1 = lambda1;
    h.solver.lambda2 = lambda2;
    h.solver.t0 = t0;
    h.solver.tol = tol;
    h.solver.max_cycles = max_cycles;
    h.solver.seed = seed;
    h.kernelized = !kernel.empty();
    if (kernel == "rbf") {
      h.spec_x = KernelSpec::Rbf(gamma);
      h.spec_y = KernelSpec::Rbf(gamma);
    } else {
      h.spec_x = KernelSpec::Linear();
      h.spec_y = KernelSpec::Linear();
    }
    h.kernel_ridge = ridge;
    h.u = u;
    h.l = l;
    h.p_low = p_low;
    h.p_high = p_high;
    h.direction = literal_constraints ? ConstraintDirection::kLiteral
                                      : ConstraintDirection::kCorrected;
    h.k = k;
    h.refs_include_target = refs != "source";
    h.cca_dim = cca_dim;
    h.cca_ridge = cca_ridge;
    h.arc_lambda = arc_lambda;
    h.arc_l = arc_l;
    h.arc_u = arc_u;
    h.arc_steps = arc_steps;
    h.arc_rate = arc_rate;
    return h;
  }
};

struct ProtocolFlags {
  int src_labeled = 20, tgt_labeled = 1, tgt_unlabeled = 20;
  int n_test = kAllRemaining;
  int trials = 10;
  std::uint64_t seed = 0;

  void Register(CLI::App* cmd) {
    cmd->add_option("--src-labeled-per-class", src_labeled,
                    "labeled source samples per class");
    cmd->add_option("--tgt-labeled-per-class", tgt_labeled,
                    "labeled target samples per class");
    cmd->add_option("--tgt-unlabeled-per-class", tgt_unlabeled,
                    "unlabeled target samples per class");
    cmd->add_option("--n-test", n_test, "test samples (-1 = all remaining)");
    cmd->add_option("--trials", trials, "number of trials");
    cmd->add_option("--protocol-seed", seed, "protocol seed");
  }

  TrialProtocol ToProtocol() const {
    return {src_labeled, tgt_labeled, tgt_unlabeled, n_test, trials, seed};
  }
};

int RunToy(const std::string& out_dir, std::uint64_t seed,
           const std::string& bias, int src_per_class, int tgt_labeled,
           int tgt_unlabeled, bool show_spec) {
  ToySpec spec;
  spec.seed = seed;
  spec.n_labeled_source_per_class = src_per_class;
  spec.n_labeled_target_per_class = tgt_labeled;
  spec.n_unlabeled_target_per_class = tgt_unlabeled;
  if (!bias.empty()) {
    const std::vector<double> values = ParseGrid(bias);
    spec.bias_shift = Eigen::VectorXd::Zero(toy_constants::kTargetDim);
    if (values.size() == 1) {
      spec.bias_shift[0] = values[0];
    } else if (static_cast<int>(values.size()) == toy_constants::kTargetDim) {
      for (int i = 0; i < toy_constants::kTargetDim; ++i)
        spec.bias_shift[i] = values[i];
    } else {
      throw ConfigError("--bias takes 1 or " +
                        std::to_string(toy_constants::kTargetDim) + " values");
    }
  }
  if (show_spec) std::cout << toy_spec_description(spec);

  const ToyDataset ds = gen_toy_dataset(spec);
  std::filesystem::create_directories(out_dir);
  write_dense_csv(out_dir + "/source.csv", ds.source);
  write_dense_csv(out_dir + "/target.csv", ds.target);
  // Fully labeled copy of the target pool for scoring.
  write_dense_csv(out_dir + "/target_truth.csv",
                  DomainData(ds.target.samples(), ds.target_truth));
  std::cout << "wrote " << out_dir << "/source.csv, target.csv, "
            << "target_truth.csv\n";
  return 0;
}

int RunFit(const std::string& source, const std::string& target,
           const std::string& label_column, const HyperFlags& flags,
           const std::string& model_out) {
  const DomainData x = load_domain_auto(source, label_column).data;
  const DomainData y = load_domain_auto(target, label_column).data;

  double u = flags.u, l = flags.l;
  if (!(u > 0.0 && l > u))
    std::tie(u, l) = estimate_bounds(x, y, flags.p_low, flags.p_high);
  const ConstraintSet cs = build_constraints(
      x, y, u, l,
      flags.literal_constraints ? ConstraintDirection::kLiteral
                                : ConstraintDirection::kCorrected);
  const MethodHyper hyper = flags.ToHyper();

  if (hyper.kernelized) {
    auto [model, report] = fit_kernelized(x, y, cs, hyper.solver, hyper.spec_x,
                                          hyper.spec_y, hyper.kernel_ridge);
    PrintReport(report);
    save_model(model_out, AnyModel(std::move(model)));
  } else {
    auto [model, report] = fit(x, y, cs, hyper.solver);
    PrintReport(report);
    save_model(model_out, AnyModel(std::move(model)));
  }
  std::cout << "model_out=" << model_out << "\n";
  return 0;
}

int RunEval(const std::string& model_path, const std::string& source,
            const std::string& target_test, const std::string& target_train,
            const std::string& label_column, int k, const std::string& refs) {
  const AnyModel model = load_model(model_path);
  const DomainData x = load_domain_auto(source, label_column).data;
  const DomainData tests = load_domain_auto(target_test, label_column).data;
  if (tests.labeled_count() == 0)
    throw DataError("eval: target-test has no labeled samples to score");
  const bool use_target_refs = refs == "both";
  if (use_target_refs && target_train.empty())
    throw ConfigError("eval: --refs both requires --target-train");

  std::vector<int> ref_labels = x.labels();
  std::vector<Eigen::VectorXd> target_ref_samples;
  if (use_target_refs) {
    const DomainData ytr = load_domain_auto(target_train, label_column).data;
    for (int j = 0; j < ytr.labeled_count(); ++j) {
      ref_labels.push_back(ytr.label(j));
      target_ref_samples.push_back(ytr.sample(j));
    }
  }

  const int ns = x.labeled_count();
  auto distance = [&](int q, int r) -> double {
    const Eigen::VectorXd yq = tests.sample(q);
    if (const auto* linear = std::get_if<MetricModel>(&model)) {
      if (r < ns) return squared_distance(*linear, make_z(x.sample(r), yq));
      const Eigen::VectorXd zero_x = Eigen::VectorXd::Zero(linear->dim_x);
      return squared_distance(
          *linear, make_z(zero_x, target_ref_samples[r - ns] - yq));
    }
    const auto& kernel = std::get<KernelModel>(model);
    if (r < ns) return cross_distance_oos(kernel, x.sample(r), yq);
    return target_distance_oos(kernel, target_ref_samples[r - ns], yq);
  };

  const std::vector<int> predicted =
      knn_classify(distance, ref_labels, tests.labeled_count(), k);
  int correct = 0;
  for (int q = 0; q < tests.labeled_count(); ++q)
    if (predicted[q] == tests.label(q)) ++correct;
  std::cout << "n_test=" << tests.labeled_count() << "\n"
            << "n_correct=" << correct << "\n"
            << "accuracy=" << FormatDouble(static_cast<double>(correct) /
                                           tests.labeled_count())
            << "\n";
  return 0;
}

int RunExperiment(const std::string& source, const std::string& target,
                  const std::string& label_column, const std::string& methods,
                  const ProtocolFlags& protocol_flags,
                  const HyperFlags& hyper_flags) {
  const DomainData x = load_domain_auto(source, label_column).data;
  const DomainData y = load_domain_auto(target, label_column).data;

  std::vector<MethodId> ids;
  std::istringstream is(methods);
  std::string name;
  while (std::getline(is, name, ','))
    if (!name.empty()) ids.push_back(method_from_name(name));
  if (ids.empty()) throw ConfigError("experiment: no methods given");

  const auto results = run_experiment(x, y, protocol_flags.ToProtocol(), ids,
                                      hyper_flags.ToHyper());
  std::cout << "method\ttrials\tmean\tstd\n";
  for (const ExperimentResult& r : results)
    std::cout << r.method_name << "\t" << r.per_trial_accuracy.size() << "\t"
              << FormatDouble(r.mean) << "\t" << FormatDouble(r.stddev)
              << "\n";
  return 0;
}

int RunSweep(const std::string& source, const std::string& target,
             const std::string& label_column, const std::string& grid_l1,
             const std::string& grid_l2, const ProtocolFlags& protocol_flags,
             const HyperFlags& hyper_flags) {
  const DomainData x = load_domain_auto(source, label_column).data;
  const DomainData y = load_domain_auto(target, label_column).data;
  const auto cells =
      param_sweep(x, y, protocol_flags.ToProtocol(), ParseGrid(grid_l1),
                  ParseGrid(grid_l2), hyper_flags.ToHyper());
  std::cout << "lambda1\tlambda2\tmean\tstd\n";
  for (const SweepCell& cell : cells)
    std::cout << FormatDouble(cell.lambda1) << "\t"
              << FormatDouble(cell.lambda2) << "\t"
              << FormatDouble(cell.result.mean) << "\t"
              << FormatDouble(cell.result.stddev) << "\n";
  return 0;
}

int RunEmbed(const std::string& model_path, int dc, const std::string& source,
             const std::string& target, const std::string& label_column,
             const std::string& out) {
  const AnyModel any = load_model(model_path);
  const MetricModel model = [&any] {
    if (const auto* linear = std::get_if<MetricModel>(&any)) return *linear;
    return recover_M(std::get<KernelModel>(any));
  }();
  const CommonSpaceEmbedding embedding = embed_common_space(model, dc);
  const DomainData x = load_domain_auto(source, label_column).data;
  const DomainData y = load_domain_auto(target, label_column).data;
  if (x.dim() != model.dim_x || y.dim() != model.dim_y)
    throw InputError("embed: data dimensions disagree with the model");

  std::ofstream file(out);
  if (!file) throw DataError("cannot write '" + out + "'");
  file << "domain,label";
  for (int c = 0; c < dc; ++c) file << ",c" << (c + 1);
  file << "\n";
  auto dump = [&file, dc](const char* tag, const DomainData& d,
                          const Eigen::MatrixXd& w) {
    for (int i = 0; i < d.count(); ++i) {
      file << tag << ",";
      if (i < d.labeled_count()) file << d.label(i);
      const Eigen::VectorXd coords = w.transpose() * d.sample(i);
      for (int c = 0; c < dc; ++c) file << "," << FormatDouble(coords[c]);
      file << "\n";
    }
  };
  dump("source", x, embedding.wx);
  dump("target", y, embedding.wy);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric learning across heterogeneous domains"};
  app.require_subcommand(1);

  // toy
  auto* toy = app.add_subcommand("toy", "generate the synthetic dataset");
  std::string toy_out = "toy-data";
  std::uint64_t toy_seed = 0;
  std::string toy_bias;
  int toy_src = 40, toy_tgt_l = 2, toy_tgt_u = 40;
  bool toy_show = false;
  toy->add_option("--out-dir", toy_out, "output directory");
  toy->add_option("--seed", toy_seed, "RNG seed");
  toy->add_option("--bias", toy_bias,
                  "labeled-target bias (1 value or full vector)");
  toy->add_option("--src-labeled", toy_src, "source samples per class");
  toy->add_option("--tgt-labeled", toy_tgt_l, "labeled target per class");
  toy->add_option("--tgt-unlabeled", toy_tgt_u, "unlabeled target per class");
  toy->add_flag("--show-spec", toy_show, "print generator constants");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "train a model");
  std::string fit_source, fit_target, fit_label = "label", fit_out;
  HyperFlags fit_flags;
  fit_cmd->add_option("--source", fit_source, "source domain file")->required();
  fit_cmd->add_option("--target", fit_target, "target domain file")->required();
  fit_cmd->add_option("--label-column", fit_label, "label header name");
  fit_cmd->add_option("--model-out", fit_out, "model output path")->required();
  fit_flags.Register(fit_cmd, false);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "score a trained model");
  std::string eval_model, eval_source, eval_test, eval_train,
      eval_label = "label", eval_refs = "source";
  int eval_k = 1;
  eval_cmd->add_option("--model", eval_model, "model file")->required();
  eval_cmd->add_option("--source", eval_source, "labeled source file")
      ->required();
  eval_cmd->add_option("--target-test", eval_test, "labeled test file")
      ->required();
  eval_cmd->add_option("--target-train", eval_train,
                       "labeled target training file (for --refs both)");
  eval_cmd->add_option("--label-column", eval_label, "label header name");
  eval_cmd->add_option("--k", eval_k, "nearest neighbors");
  eval_cmd->add_option("--refs", eval_refs, "reference set: source|both")
      ->check(CLI::IsMember({"source", "both"}));

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run the trial protocol");
  std::string exp_source, exp_target, exp_label = "label", exp_methods = "mlhd";
  ProtocolFlags exp_protocol;
  HyperFlags exp_flags;
  exp_cmd->add_option("--source", exp_source, "source pool file")->required();
  exp_cmd->add_option("--target", exp_target, "target pool file")->required();
  exp_cmd->add_option("--label-column", exp_label, "label header name");
  exp_cmd->add_option("--method", exp_methods,
                      "comma list of mlhd|arc|cca-nn|cca-itml");
  exp_protocol.Register(exp_cmd);
  exp_flags.Register(exp_cmd, true);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "lambda1/lambda2 surface");
  std::string sweep_source, sweep_target, sweep_label = "label";
  std::string sweep_l1 = "0.001 0.01 0.1 1 10 100";
  std::string sweep_l2 = "0.01 0.1 1 10 100 1000";
  ProtocolFlags sweep_protocol;
  HyperFlags sweep_flags;
  sweep_cmd->add_option("--source", sweep_source, "source pool file")
      ->required();
  sweep_cmd->add_option("--target", sweep_target, "target pool file")
      ->required();
  sweep_cmd->add_option("--label-column", sweep_label, "label header name");
  sweep_cmd->add_option("--grid-l1", sweep_l1, "lambda1 values");
  sweep_cmd->add_option("--grid-l2", sweep_l2, "lambda2 values");
  sweep_protocol.Register(sweep_cmd);
  sweep_flags.Register(sweep_cmd, true);

  // embed
  auto* embed_cmd =
      app.add_subcommand("embed", "dump common-space coordinates");
  std::string embed_model, embed_source, embed_target, embed_out,
      embed_label = "label";
  int embed_dc = 2;
  embed_cmd->add_option("--model", embed_model, "model file")->required();
  embed_cmd->add_option("--dc", embed_dc, "embedding dimension")->required();
  embed_cmd->add_option("--source", embed_source, "source file")->required();
  embed_cmd->add_option("--target", embed_target, "target file")->required();
  embed_cmd->add_option("--out", embed_out, "output CSV")->required();
  embed_cmd->add_option("--label-column", embed_label, "label header name");

  try {
    app.parse(argc, argv);
    if (toy->parsed())
      return RunToy(toy_out, toy_seed, toy_bias, toy_src, toy_tgt_l, toy_tgt_u,
                    toy_show);
    if (fit_cmd->parsed())
      return RunFit(fit_source, fit_target, fit_label, fit_flags, fit_out);
    if (eval_cmd->parsed())
      return RunEval(eval_model, eval_source, eval_test, eval_train,
                     eval_label, eval_k, eval_refs);
    if (exp_cmd->parsed())
      return RunExperiment(exp_source, exp_target, exp_label, exp_methods,
                           exp_protocol, exp_flags);
    if (sweep_cmd->parsed())
      return RunSweep(sweep_source, sweep_target, sweep_label, sweep_l1,
                      sweep_l2, sweep_protocol, sweep_flags);
    if (embed_cmd->parsed())
      return RunEmbed(embed_model, embed_dc, embed_source, embed_target,
                      embed_label, embed_out);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
