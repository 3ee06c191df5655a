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

#include "qfno/eval/eval.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>

#include "qfno/error.hpp"
#include "qfno/eval/metrics.hpp"
#include "qfno/states/states.hpp"
#include "qfno/train/trainer.hpp"

namespace qfno::eval {

namespace {

constexpr std::size_t kChunk = 128;

bool is_index(const std::string& s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::vector<std::size_t> iota_range(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> v(end - begin);
  std::iota(v.begin(), v.end(), begin);
  return v;
}

// Column j of sample s in a (B, C, m) tensor.
std::vector<Complex> column(const ComplexTensor& w, std::size_t s, std::size_t j) {
  const std::size_t c = w.dim(1), m = w.dim(2);
  std::vector<Complex> out(c);
  for (std::size_t i = 0; i < c; ++i) out[i] = w[(s * c + i) * m + j];
  return out;
}

// Columns [first, first + count) of a (B, C, m) tensor.
ComplexTensor columns(const ComplexTensor& w, std::size_t first, std::size_t count) {
  const std::size_t b = w.dim(0), c = w.dim(1), m = w.dim(2);
  ComplexTensor out({b, c, count});
  for (std::size_t s = 0; s < b; ++s)
    for (std::size_t i = 0; i < c; ++i)
      std::copy_n(&w[(s * c + i) * m + first], count, &out[(s * c + i) * count]);
  return out;
}

std::vector<double> real_parts(const ComplexTensor& w) {
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i].real();
  return out;
}

// Real parts of a single sample of a (B, C, m) tensor.
std::vector<double> sample_reals(const ComplexTensor& w, std::size_t s) {
  const std::size_t per = w.size() / w.dim(0);
  std::vector<double> out(per);
  for (std::size_t i = 0; i < per; ++i) out[i] = w[s * per + i].real();
  return out;
}

void add_mean_std(EvalReport& r, const std::vector<double>& v, double t0, double t1, const std::string& metric) {
  const MeanStd ms = mean_std(v);
  r.add("mean", t0, t1, metric, ms.mean);
  r.add("std", t0, t1, metric, ms.std);
}

std::size_t base_count(const evolve::Dataset& data) {
  return data.arch == Arch::kEnergy ? data.options.count : data.size();
}

void require_windowed(const evolve::Dataset& data, const char* what) {
  if (data.arch == Arch::kEnergy) throw ValidationError(std::string(what) + ": needs time-gridded data");
}

}  // namespace

void EvalReport::add(std::string sample, double t_start, double t_end, std::string metric, double value) {
  rows.push_back({std::move(sample), t_start, t_end, std::move(metric), value});
}

void EvalReport::add(std::size_t sample, double t_start, double t_end, std::string metric, double value) {
  add(std::to_string(sample), t_start, t_end, std::move(metric), value);
}

std::vector<double> EvalReport::values(const std::string& metric, double lo, double hi) const {
  const double slack = 1e-9 * std::max(1.0, std::abs(hi));
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.metric == metric && is_index(r.sample) && r.t_start >= lo - slack && r.t_end <= hi + slack) {
      out.push_back(r.value);
    }
  }
  return out;
}

std::vector<double> EvalReport::values(const std::string& metric) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.metric == metric && is_index(r.sample)) out.push_back(r.value);
  return out;
}

double EvalReport::aggregate(const std::string& sample, const std::string& metric) const {
  for (const auto& r : rows)
    if (r.sample == sample && r.metric == metric) return r.value;
  throw ValidationError("report has no '" + sample + "' row for metric '" + metric + "'");
}

StateStepper fno_state_stepper(const fno::FnoModel& model) {
  return [&model](const ComplexTensor& states) {
    const std::size_t b = states.dim(0), d = states.dim(1);
    ComplexTensor out = fno::fno_forward_batch(model, fno::energy_model_input(states)).reshaped({b, d});
    for (std::size_t s = 0; s < b; ++s) {
      double nn = 0.0;
      for (std::size_t k = 0; k < d; ++k) nn += std::norm(out[s * d + k]);
      if (nn == 0.0) continue;
      const double inv = 1.0 / std::sqrt(nn);
      for (std::size_t k = 0; k < d; ++k) out[s * d + k] *= inv;
    }
    return out;
  };
}

StateStepper oracle_state_stepper(const spin::HamiltonianMatrix& h, double period) {
  return [&h, period](const ComplexTensor& states) {
    const std::size_t b = states.dim(0), d = states.dim(1);
    ComplexTensor out({b, d});
    for (std::size_t s = 0; s < b; ++s) {
      WaveFunction psi{ComplexTensor({d}, std::vector<Complex>(&states[s * d], &states[s * d] + d)),
                       BasisOrder::kEnergy};
      psi.normalize();
      const WaveFunction next = evolve::evolve_state(h, psi, period);
      std::copy_n(next.amplitudes.data().begin(), d, &out[s * d]);
    }
    return out;
  };
}

WindowStepper fno_window_stepper(const fno::FnoModel& model, double dt, bool normalize) {
  return [&model, dt, normalize](const ComplexTensor& windows) {
    ComplexTensor out = fno::to_sample_major(fno::fno_forward_batch(model, fno::window_model_input(windows, dt)));
    if (normalize) normalize_columns(out);
    return out;
  };
}

WindowStepper oracle_window_stepper(const spin::HamiltonianMatrix& h, double period, double dt) {
  return [&h, period, dt](const ComplexTensor& windows) {
    const std::size_t b = windows.dim(0), c = windows.dim(1), m = windows.dim(2);
    std::vector<double> times(m);
    for (std::size_t j = 0; j < m; ++j) times[j] = period + static_cast<double>(j) * dt;
    ComplexTensor out({b, c, m});
    for (std::size_t s = 0; s < b; ++s) {
      const std::vector<Complex> col = column(windows, s, 0);
      WaveFunction psi{ComplexTensor({c}, col), BasisOrder::kEnergy};
      psi.normalize();
      const ComplexTensor traj = evolve::evolve_to_times(h, psi, times);
      std::copy_n(traj.data().begin(), c * m, &out[s * c * m]);
    }
    return out;
  };
}

std::vector<ComplexTensor> rollout_energy(const StateStepper& step, const ComplexTensor& psi0, std::size_t steps) {
  if (psi0.rank() != 2) throw ValidationError("rollout_energy: expected (B, d) states");
  std::vector<ComplexTensor> out;
  out.reserve(steps);
  ComplexTensor cur = psi0;
  for (std::size_t k = 0; k < steps; ++k) {
    cur = step(cur);
    if (cur.shape() != psi0.shape()) throw ValidationError("rollout_energy: stepper changed the state shape");
    out.push_back(cur);
  }
  return out;
}

TimeRollout rollout_time(const WindowStepper& step, const ComplexTensor& input, const evolve::TimeGrid& input_grid,
                         double period, std::size_t rounds) {
  if (input.rank() != 3 || input.dim(2) != input_grid.m) {
    throw ValidationError("rollout_time: input must be (B, C, m) on the input grid");
  }
  const std::size_t m = input_grid.m;
  const std::size_t shift = evolve::steps_in(period, input_grid.dt);
  if (shift > m) throw ValidationError("rollout_time: window shorter than one period");
  const std::size_t b = input.dim(0), c = input.dim(1);

  TimeRollout r;
  r.grid = evolve::TimeGrid{input_grid.t0 + period, input_grid.dt, m + rounds * shift};
  r.trajectory = ComplexTensor({b, c, r.grid.m});
  ComplexTensor cur = input;
  std::size_t filled = 0;
  for (std::size_t k = 0; k <= rounds; ++k) {
    cur = step(cur);
    if (cur.shape() != input.shape()) throw ValidationError("rollout_time: stepper changed the window shape");
    const std::size_t first = k == 0 ? 0 : m - shift;
    for (std::size_t s = 0; s < b; ++s)
      for (std::size_t i = 0; i < c; ++i)
        std::copy_n(&cur[(s * c + i) * m + first], m - first, &r.trajectory[(s * c + i) * r.grid.m + filled]);
    filled += m - first;
    r.windows.push_back(cur);
  }
  return r;
}

ComplexTensor exact_windows(const spin::HamiltonianMatrix& h, const evolve::Dataset& data,
                            const std::vector<std::size_t>& samples, const std::vector<double>& times) {
  const std::size_t d = h.dim(), m = times.size();
  const bool observables = data.arch == Arch::kObservables;
  const spin::ObservableSet obs = spin::default_observables(h.qubits());
  const std::size_t c = observables ? obs.size() : d;
  ComplexTensor out({samples.size(), c, m});
  const auto total = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto s = static_cast<std::size_t>(k);
    const WaveFunction psi0 = evolve::initial_state(h, data.options, samples[s]);
    if (observables) {
      const ComplexTensor traj = evolve::evolve_to_times(h, psi0, times);
      std::vector<Complex> col(d);
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t r = 0; r < d; ++r) col[r] = traj.at(r, j);
        for (std::size_t o = 0; o < c; ++o) out[(s * c + o) * m + j] = obs.operators[o].expectation(col);
      }
    } else {
      const ComplexTensor traj = evolve::evolve_to_times(h, states::to_energy_order(psi0, h), times);
      std::copy_n(traj.data().begin(), d * m, &out[s * d * m]);
    }
  }
  return out;
}

EvalReport eval_output(const fno::FnoModel& model, const evolve::Dataset& data) {
  data.validate();
  if (model.config().arch != data.arch) throw ValidationError("eval: model and dataset architectures differ");
  EvalReport r;
  const std::size_t n = data.size();
  const double period = data.options.period;
  std::vector<double> per_sample;
  MreAccumulator pooled;
  double mse_sum = 0.0;
  const double t0 = data.target_grid.t0, t1 = data.target_grid.end();
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::vector<std::size_t> idx = iota_range(start, std::min(n, start + kChunk));
    const train::Batch batch = train::make_batch(data, idx);
    const ComplexTensor pred = fno::fno_forward_batch(model, batch.input);
    if (data.arch == Arch::kEnergy) {
      const std::vector<double> f = batch_fidelity(data.arch, pred, batch.target);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double interval = static_cast<double>(idx[k] / data.options.count);
        r.add(idx[k], interval * period, (interval + 1.0) * period, "fidelity", f[k]);
        per_sample.push_back(f[k]);
      }
    } else if (data.arch == Arch::kTime) {
      const ComplexTensor p = fno::to_sample_major(pred), t = fno::to_sample_major(batch.target);
      const std::size_t m = data.target_grid.m;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const double f = overlap_fidelity(column(t, k, j), column(p, k, j));
          const double tj = data.target_grid.point(j);
          r.add(idx[k], tj, tj, "fidelity", f);
          acc += f;
        }
        per_sample.push_back(acc / static_cast<double>(m));
      }
    } else {
      const ComplexTensor p = fno::to_sample_major(pred), t = fno::to_sample_major(batch.target);
      pooled.add(p, t);
      mse_sum += train::loss_mse(p, t) * static_cast<double>(idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) {
        MreAccumulator one;
        one.add(sample_reals(p, k), sample_reals(t, k));
        if (!one.empty()) r.add(idx[k], t0, t1, "mre", one.result().value);
      }
    }
  }
  if (data.arch == Arch::kObservables) {
    const MreResult total = pooled.result();
    r.add("all", t0, t1, "mre", total.value);
    r.add("all", t0, t1, "mre_entries", static_cast<double>(total.included));
    r.add("all", t0, t1, "mse", mse_sum / static_cast<double>(n));
  } else {
    add_mean_std(r, per_sample, data.arch == Arch::kEnergy ? 0.0 : t0, t1, "fidelity");
  }
  return r;
}

EvalReport eval_rollout(const fno::FnoModel& model, const evolve::Dataset& data, std::size_t rounds, bool gt_fed) {
  data.validate();
  if (model.config().arch != data.arch) throw ValidationError("rollout: model and dataset architectures differ");
  const spin::HamiltonianMatrix h = spin::build_hamiltonian(data.spec);
  const double period = data.options.period;
  const std::size_t n = base_count(data);
  EvalReport r;

  if (data.arch == Arch::kEnergy) {
    if (rounds == 0) throw ValidationError("rollout: energy rollouts need at least one step");
    std::vector<std::vector<double>> per_step(rounds);
    std::vector<double> times(rounds);
    for (std::size_t k = 0; k < rounds; ++k) times[k] = static_cast<double>(k + 1) * period;
    const StateStepper step = fno_state_stepper(model);
    for (std::size_t start = 0; start < n; start += kChunk) {
      const std::vector<std::size_t> idx = iota_range(start, std::min(n, start + kChunk));
      const std::vector<ComplexTensor> pred = rollout_energy(step, train::gather_samples(data.inputs, idx), rounds);
      const ComplexTensor truth = exact_windows(h, data, idx, times);
      const std::size_t d = h.dim();
      for (std::size_t k = 0; k < rounds; ++k)
        for (std::size_t s = 0; s < idx.size(); ++s) {
          const double f = overlap_fidelity(column(truth, s, k), std::span(&pred[k][s * d], d));
          r.add(idx[s], times[k], times[k], "fidelity", f);
          per_step[k].push_back(f);
        }
    }
    for (std::size_t k = 0; k < rounds; ++k) add_mean_std(r, per_step[k], times[k], times[k], "fidelity");
    return r;
  }

  const evolve::TimeGrid& grid = data.input_grid;
  const std::size_t m = grid.m, shift = evolve::steps_in(period, grid.dt);

  if (data.arch == Arch::kTime) {
    const WindowStepper step = fno_window_stepper(model, grid.dt, true);
    std::vector<std::vector<double>> per_round(rounds + 1);
    evolve::TimeGrid out_grid;
    for (std::size_t start = 0; start < n; start += kChunk) {
      const std::vector<std::size_t> idx = iota_range(start, std::min(n, start + kChunk));
      const TimeRollout roll = rollout_time(step, train::gather_samples(data.inputs, idx), grid, period, rounds);
      out_grid = roll.grid;
      const ComplexTensor truth = exact_windows(h, data, idx, roll.grid.points());
      for (std::size_t s = 0; s < idx.size(); ++s) {
        std::vector<double> round_acc(rounds + 1, 0.0);
        for (std::size_t j = 0; j < roll.grid.m; ++j) {
          const double f = overlap_fidelity(column(truth, s, j), column(roll.trajectory, s, j));
          const double tj = roll.grid.point(j);
          r.add(idx[s], tj, tj, "fidelity", f);
          const std::size_t round = j < m ? 0 : 1 + (j - m) / shift;
          round_acc[round] += f;
        }
        for (std::size_t k = 0; k <= rounds; ++k)
          per_round[k].push_back(round_acc[k] / static_cast<double>(k == 0 ? m : shift));
      }
    }
    for (std::size_t k = 0; k <= rounds; ++k) {
      const double a = k == 0 ? out_grid.point(0) : out_grid.point(m + (k - 1) * shift);
      const double b = k == 0 ? out_grid.point(m - 1) : out_grid.point(m + k * shift - 1);
      add_mean_std(r, per_round[k], a, b, "fidelity");
    }
    return r;
  }

  // Observables: whole windows per round, either self-fed or fed the exact
  // previous window.
  const WindowStepper step = fno_window_stepper(model, grid.dt, false);
  std::vector<MreAccumulator> pooled(rounds + 1);
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::vector<std::size_t> idx = iota_range(start, std::min(n, start + kChunk));
    std::vector<double> times((rounds + 1) * shift + m);
    for (std::size_t j = 0; j < times.size(); ++j) times[j] = grid.t0 + static_cast<double>(j) * grid.dt;
    const ComplexTensor truth = exact_windows(h, data, idx, times);
    ComplexTensor cur = train::gather_samples(data.inputs, idx);
    for (std::size_t k = 0; k <= rounds; ++k) {
      if (gt_fed && k > 0) cur = columns(truth, k * shift, m);
      cur = step(cur);
      const ComplexTensor want = columns(truth, (k + 1) * shift, m);
      pooled[k].add(cur, want);
      const double a = grid.t0 + static_cast<double>(k + 1) * period;
      const double b = a + static_cast<double>(m) * grid.dt;
      for (std::size_t s = 0; s < idx.size(); ++s) {
        MreAccumulator one;
        one.add(sample_reals(cur, s), sample_reals(want, s));
        if (!one.empty()) r.add(idx[s], a, b, "mre", one.result().value);
      }
    }
  }
  for (std::size_t k = 0; k <= rounds; ++k) {
    const double a = grid.t0 + static_cast<double>(k + 1) * period;
    r.add("all", a, a + static_cast<double>(m) * grid.dt, "mre", pooled[k].result().value);
  }
  return r;
}

EvalReport eval_superres(const fno::FnoModel& model, const evolve::Dataset& data, std::size_t factor) {
  data.validate();
  if (data.arch != Arch::kTime) throw ValidationError("superres: needs wavefunction time data");
  if (model.config().arch != data.arch) throw ValidationError("superres: model and dataset architectures differ");
  if (factor < 1) throw ValidationError("superres: factor must be at least 1");
  const spin::HamiltonianMatrix h = spin::build_hamiltonian(data.spec);
  const double period = data.options.period;
  const evolve::TimeGrid coarse = data.input_grid;
  const evolve::TimeGrid fine{coarse.t0, coarse.dt / static_cast<double>(factor), coarse.m * factor};
  const double t_out = coarse.t0 + period;
  EvalReport r;
  std::vector<double> fc_all, ff_all;

  auto window_fidelity = [&](const evolve::TimeGrid& g, const std::vector<std::size_t>& idx) {
    std::vector<double> times(2 * g.m);
    for (std::size_t j = 0; j < g.m; ++j) {
      times[j] = g.point(j);
      times[g.m + j] = t_out + static_cast<double>(j) * g.dt;
    }
    const ComplexTensor truth = exact_windows(h, data, idx, times);
    const ComplexTensor pred = fno_window_stepper(model, g.dt, true)(columns(truth, 0, g.m));
    const ComplexTensor want = columns(truth, g.m, g.m);
    std::vector<double> f(idx.size(), 0.0);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      for (std::size_t j = 0; j < g.m; ++j) f[s] += overlap_fidelity(column(want, s, j), column(pred, s, j));
      f[s] /= static_cast<double>(g.m);
    }
    return f;
  };

  const std::size_t n = data.size();
  const double t_end = t_out + static_cast<double>(coarse.m) * coarse.dt;
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::vector<std::size_t> idx = iota_range(start, std::min(n, start + kChunk));
    const std::vector<double> fc = window_fidelity(coarse, idx);
    const std::vector<double> ff = window_fidelity(fine, idx);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      r.add(idx[s], t_out, t_end, "fidelity_coarse", fc[s]);
      r.add(idx[s], t_out, t_end, "fidelity_fine", ff[s]);
    }
    fc_all.insert(fc_all.end(), fc.begin(), fc.end());
    ff_all.insert(ff_all.end(), ff.begin(), ff.end());
  }
  add_mean_std(r, fc_all, t_out, t_end, "fidelity_coarse");
  add_mean_std(r, ff_all, t_out, t_end, "fidelity_fine");
  const double c = mean_std(fc_all).mean, f = mean_std(ff_all).mean;
  r.add("all", t_out, t_end, "degradation", c > 0.0 ? (c - f) / c : 0.0);
  r.add("all", t_out, t_end, "factor", static_cast<double>(factor));
  return r;
}

BenchResult bench(const fno::FnoModel& model, const evolve::Dataset& data, std::size_t rounds,
                  std::size_t max_samples) {
  data.validate();
  if (model.config().arch != data.arch) throw ValidationError("bench: model and dataset architectures differ");
  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::time_point a, Clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };

  BenchResult out;
  out.rounds = rounds;
  const std::size_t n = base_count(data);
  out.samples = max_samples == 0 ? n : std::min(n, max_samples);
  const std::vector<std::size_t> idx = iota_range(0, out.samples);
  const double period = data.options.period;

  auto t0 = Clock::now();
  const spin::HamiltonianMatrix h = spin::build_hamiltonian(data.spec);
  auto t1 = Clock::now();
  out.decomposition_seconds = seconds(t0, t1);

  std::vector<double> times;
  const ComplexTensor input = train::gather_samples(data.inputs, idx);
  if (data.arch == Arch::kEnergy) {
    const std::size_t steps = std::max<std::size_t>(rounds, 1);
    for (std::size_t k = 1; k <= steps; ++k) times.push_back(static_cast<double>(k) * period);
    t0 = Clock::now();
    (void)rollout_energy(fno_state_stepper(model), input, steps);
    t1 = Clock::now();
  } else {
    const std::size_t shift = evolve::steps_in(period, data.input_grid.dt);
    const evolve::TimeGrid g{data.input_grid.t0 + period, data.input_grid.dt, data.input_grid.m + rounds * shift};
    times = g.points();
    t0 = Clock::now();
    (void)rollout_time(fno_window_stepper(model, data.input_grid.dt, data.arch == Arch::kTime), input,
                       data.input_grid, period, rounds);
    t1 = Clock::now();
  }
  out.fno_seconds = seconds(t0, t1);

  t0 = Clock::now();
  (void)exact_windows(h, data, idx, times);
  t1 = Clock::now();
  out.exact_seconds = seconds(t0, t1);
  return out;
}

EvalReport bench_report(const BenchResult& b, double t_end) {
  EvalReport r;
  r.add("all", 0.0, t_end, "decomposition_seconds", b.decomposition_seconds);
  r.add("all", 0.0, t_end, "exact_seconds", b.exact_seconds);
  r.add("all", 0.0, t_end, "fno_seconds", b.fno_seconds);
  r.add("all", 0.0, t_end, "speedup", b.ratio());
  r.add("all", 0.0, t_end, "samples", static_cast<double>(b.samples));
  r.add("all", 0.0, t_end, "rounds", static_cast<double>(b.rounds));
  return r;
}

}  // namespace qfno::eval
