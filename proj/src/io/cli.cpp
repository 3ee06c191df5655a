// Copyright 2026 The qfno Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfno/io/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "qfno/error.hpp"
#include "qfno/eval/eval.hpp"
#include "qfno/io/config.hpp"
#include "qfno/io/csv.hpp"
#include "qfno/io/formats.hpp"
#include "qfno/spin/hamiltonian.hpp"
#include "qfno/train/trainer.hpp"

namespace qfno::io {

namespace {

struct GenArgs {
  std::string model = "heisenberg";
  std::size_t qubits = 4;
  std::string arch;
  std::string input_type = "random";
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool vti = false;
  std::size_t intervals = 3;
  double fraction = evolve::DatasetOptions{}.fraction;
  double period = evolve::kDefaultPeriod;
  double dt = evolve::kDefaultStep;
  std::uint64_t first_sample = 0;
  std::string out = "dataset.qfno";
};

struct TrainArgs {
  std::string data;
  std::size_t modes = 0;
  std::size_t blocks = 4;
  std::size_t width = 0;
  double lr = 1e-3;
  std::size_t epochs = 500;
  std::size_t batch = 64;
  std::uint64_t seed = 0;
  std::string loss;
  std::string out;
  std::string metrics;
  std::size_t log_every = 10;
};

struct EvalArgs {
  std::string ckpt;
  std::string data;
  std::string out;
  std::size_t rounds = 9;
  bool gt_fed = false;
  std::size_t factor = 10;
  std::size_t samples = 0;
};

// Flags that take no value; a config entry set to true turns them on.
const std::set<std::string> kBooleanKeys = {"vti", "gt-fed"};

bool mentions(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Pulls --config FILE out of the arguments and appends its entries for
// every key not given explicitly.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config requires a file");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;
  for (const auto& [key, value] : load_config(*path)) {
    if (mentions(args, key)) continue;
    if (kBooleanKeys.count(key)) {
      if (value == "true" || value == "1") args.push_back("--" + key);
      else if (value != "false" && value != "0") throw ValidationError("config: '" + key + "' must be true or false");
    } else {
      args.push_back("--" + key + "=" + value);
    }
  }
  return args;
}

int gen(const GenArgs& a, std::ostream& out) {
  const Arch arch = parse_arch(a.arch);
  const auto spec = spin::SpinChainSpec::random(spin::parse_model(a.model), a.qubits, a.seed);
  if (a.vti && arch != Arch::kEnergy) throw ValidationError("--vti applies to the energy architecture only");
  if (a.samples == 0) throw ValidationError("--samples must be positive");
  const spin::HamiltonianMatrix h = spin::build_hamiltonian(spec);
  evolve::DatasetOptions o;
  o.count = a.samples;
  o.input_type = parse_input_type(a.input_type);
  o.intervals = a.vti ? a.intervals : 1;
  o.fraction = a.fraction;
  o.period = a.period;
  o.dt = a.dt;
  o.first_sample = a.first_sample;
  const evolve::Dataset ds = evolve::build_dataset(arch, h, o);
  save_dataset(a.out, ds);
  out << "wrote " << ds.size() << " " << arch_name(arch) << " samples (" << spin::model_name(spec.model) << ", "
      << spec.qubits << " qubits) to " << a.out << "\n";
  return kExitOk;
}

int train_cmd(const TrainArgs& a, std::ostream& out) {
  const evolve::Dataset ds = load_dataset(a.data);
  fno::ModelOptions mo;
  mo.width = a.width;
  mo.blocks = a.blocks;
  mo.modes = a.modes;
  mo.seed = a.seed;
  fno::FnoModel model(fno::config_for(ds.arch, ds.spec.qubits, mo));
  model.initialize(a.seed);
  train::TrainConfig cfg;
  cfg.lr = a.lr;
  cfg.epochs = a.epochs;
  cfg.batch_size = a.batch;
  cfg.seed = a.seed;
  cfg.loss = a.loss.empty() ? train::default_loss(ds.arch) : train::parse_loss(a.loss);
  cfg.on_epoch = [&](const train::EpochMetrics& m) {
    if (a.log_every != 0 && ((m.epoch + 1) % a.log_every == 0 || m.epoch + 1 == a.epochs)) {
      out << "epoch " << (m.epoch + 1) << " train_loss " << format_double(m.train_loss) << " val_loss "
          << format_double(m.val_loss) << " val_fidelity " << format_double(m.val_fidelity) << "\n";
    }
  };
  const train::TrainResult r = train::train(std::move(model), ds, cfg);
  save_checkpoint(a.out, r.model);
  if (!a.metrics.empty()) write_metrics_csv(a.metrics, r.metrics);
  const auto& best = r.metrics[r.best_epoch];
  out << "best epoch " << (r.best_epoch + 1) << " val_loss " << format_double(best.val_loss) << " val_fidelity "
      << format_double(best.val_fidelity) << "; checkpoint " << a.out << "\n";
  return kExitOk;
}

void print_summary(const eval::EvalReport& report, std::ostream& out) {
  for (const auto& r : report.rows) {
    if (r.sample == "mean" || r.sample == "all") {
      out << r.metric << " [" << format_double(r.t_start) << ", " << format_double(r.t_end) << "] " << r.sample
          << " " << format_double(r.value) << "\n";
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier neural operator surrogates for spin-chain dynamics", "qfno"};
  app.require_subcommand(1, 1);

  GenArgs g;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a dataset from exact evolution");
  gen_cmd->add_option("--model", g.model, "heisenberg or ising")->capture_default_str();
  gen_cmd->add_option("--qubits", g.qubits, "Chain length (2-10)")->capture_default_str();
  gen_cmd->add_option("--arch", g.arch, "energy, time or observables")->required();
  gen_cmd->add_option("--input-type", g.input_type, "random or low-energy")->capture_default_str();
  gen_cmd->add_option("--samples", g.samples, "Initial states (per interval with --vti)")->required();
  gen_cmd->add_option("--seed", g.seed, "Seed for couplings and states")->required();
  gen_cmd->add_flag("--vti", g.vti, "Energy pairs over several consecutive intervals");
  gen_cmd->add_option("--intervals", g.intervals, "Interval count with --vti")->capture_default_str();
  gen_cmd->add_option("--fraction", g.fraction, "Low-energy support fraction")->capture_default_str();
  gen_cmd->add_option("--period", g.period, "Interval length T")->capture_default_str();
  gen_cmd->add_option("--dt", g.dt, "Grid step")->capture_default_str();
  gen_cmd->add_option("--first-sample", g.first_sample, "Offset of the first sample stream")->capture_default_str();
  gen_cmd->add_option("--out", g.out, "Output dataset path")->capture_default_str();

  TrainArgs t;
  auto* train_sub = app.add_subcommand("train", "Train a model on a dataset");
  train_sub->add_option("--data", t.data, "Dataset path")->required();
  train_sub->add_option("--modes", t.modes, "Retained Fourier modes (0: default)")->capture_default_str();
  train_sub->add_option("--blocks", t.blocks, "Fourier blocks")->capture_default_str();
  train_sub->add_option("--width", t.width, "Hidden channels (0: default)")->capture_default_str();
  train_sub->add_option("--lr", t.lr, "Adam learning rate")->capture_default_str();
  train_sub->add_option("--epochs", t.epochs, "Epochs")->capture_default_str();
  train_sub->add_option("--batch", t.batch, "Mini-batch size")->capture_default_str();
  train_sub->add_option("--seed", t.seed, "Initialization and shuffling seed")->capture_default_str();
  train_sub->add_option("--loss", t.loss, "rel_l2 or mse (default by architecture)");
  train_sub->add_option("--out", t.out, "Checkpoint path")->required();
  train_sub->add_option("--metrics", t.metrics, "Per-epoch metrics CSV");
  train_sub->add_option("--log-every", t.log_every, "Print every N epochs (0: quiet)")->capture_default_str();

  EvalArgs e;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--ckpt", e.ckpt, "Checkpoint path")->required();
    sub->add_option("--data", e.data, "Dataset path")->required();
    sub->add_option("--out", e.out, "Report CSV")->required();
  };
  auto* eval_sub = app.add_subcommand("eval", "Output-interval fidelity or MRE");
  add_common(eval_sub);
  auto* rollout_sub = app.add_subcommand("rollout", "Autoregressive extrapolation");
  add_common(rollout_sub);
  rollout_sub->add_option("--rounds", e.rounds, "Extra rounds (energy: steps)")->required();
  rollout_sub->add_flag("--gt-fed", e.gt_fed, "Feed exact windows (observables)");
  auto* superres_sub = app.add_subcommand("superres", "Evaluate on a refined time grid");
  add_common(superres_sub);
  superres_sub->add_option("--factor", e.factor, "Grid refinement factor")->required();
  auto* bench_sub = app.add_subcommand("bench", "Time the model against exact evolution");
  add_common(bench_sub);
  bench_sub->add_option("--rounds", e.rounds, "Rollout rounds")->capture_default_str();
  bench_sub->add_option("--samples", e.samples, "Samples to time (0: all)")->capture_default_str();

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n" << app.help();
    return kExitValidation;
  } catch (const IoError& ex) {
    err << "error (" << io_error_name(ex.code()) << "): " << ex.what() << "\n";
    return kExitIo;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitValidation;
  }

  try {
    if (gen_cmd->parsed()) return gen(g, out);
    if (train_sub->parsed()) return train_cmd(t, out);
    const fno::FnoModel model = load_checkpoint(e.ckpt);
    const evolve::Dataset ds = load_dataset(e.data);
    eval::EvalReport report;
    if (eval_sub->parsed()) {
      report = eval::eval_output(model, ds);
    } else if (rollout_sub->parsed()) {
      report = eval::eval_rollout(model, ds, e.rounds, e.gt_fed);
    } else if (superres_sub->parsed()) {
      report = eval::eval_superres(model, ds, e.factor);
    } else {
      const eval::BenchResult b = eval::bench(model, ds, e.rounds, e.samples);
      const double shift = ds.arch == Arch::kEnergy ? 0.0 : ds.options.period * static_cast<double>(e.rounds);
      const double horizon = ds.arch == Arch::kEnergy ? ds.options.period * static_cast<double>(std::max<std::size_t>(e.rounds, 1))
                                                       : ds.target_grid.end() + shift;
      report = eval::bench_report(b, horizon);
    }
    write_report_csv(e.out, report);
    print_summary(report, out);
    return kExitOk;
  } catch (const IoError& ex) {
    err << "error (" << io_error_name(ex.code()) << "): " << ex.what() << "\n";
    return kExitIo;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace qfno::io
