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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "../support/gradcheck.hpp"
#include "qfno/error.hpp"
#include "qfno/train/adam.hpp"
#include "qfno/train/loss.hpp"
#include "qfno/train/trainer.hpp"

using namespace qfno;
using namespace qfno::train;
using qfno::testing::random_complex;

namespace {

evolve::Dataset small_time_data(std::size_t count, std::uint64_t seed = 3) {
  const auto h = spin::build_hamiltonian(spin::SpinChainSpec::random(spin::Model::kHeisenberg, 2, seed));
  evolve::DatasetOptions o;
  o.count = count;
  return evolve::build_time_dataset(h, o);
}

fno::FnoModel tiny_time_model(std::uint64_t seed) {
  fno::ModelOptions o;
  o.width = 8;
  o.blocks = 1;
  o.modes = 4;
  o.seed = seed;
  return fno::make_time_model(2, o);
}

}  // namespace

TEST(Loss, RelativeL2Examples) {
  const ComplexTensor t({1, 1, 2}, {Complex(3, 0), Complex(0, 4)});
  EXPECT_EQ(loss_rel_l2(t, t), 0.0);
  EXPECT_DOUBLE_EQ(loss_rel_l2(ComplexTensor({1, 1, 2}), t), 1.0);
  const ComplexTensor p({1, 1, 2}, {Complex(3, 0), Complex(0, 1)});
  EXPECT_DOUBLE_EQ(loss_rel_l2(p, t), 3.0 / 5.0);
  // a zero target uses the floor instead of dividing by zero
  EXPECT_DOUBLE_EQ(loss_rel_l2(ComplexTensor({1, 1, 1}, {Complex(1e-12, 0)}), ComplexTensor({1, 1, 1})), 1.0);
}

TEST(Loss, RelativeL2AveragesOverBatch) {
  // (C=1, B=2, N=1): sample 0 exact, sample 1 off by its own norm
  const ComplexTensor t({1, 2, 1}, {Complex(1, 0), Complex(2, 0)});
  const ComplexTensor p({1, 2, 1}, {Complex(1, 0), Complex(0, 0)});
  EXPECT_DOUBLE_EQ(loss_rel_l2(p, t), 0.5);
}

TEST(Loss, MseMatchesLoop) {
  numerics::RngStream rng(5, 0);
  const ComplexTensor a = random_complex({3, 4, 5}, rng), b = random_complex({3, 4, 5}, rng);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  EXPECT_NEAR(loss_mse(a, b), s / static_cast<double>(a.size()), 1e-14);
  EXPECT_THROW(loss_mse(a, ComplexTensor({3, 4})), ValidationError);
}

TEST(Loss, NamesRoundTrip) {
  EXPECT_EQ(parse_loss(loss_name(LossKind::kMse)), LossKind::kMse);
  EXPECT_EQ(parse_loss("rel_l2"), LossKind::kRelL2);
  EXPECT_THROW(parse_loss("huber"), ValidationError);
  EXPECT_EQ(default_loss(Arch::kTime), LossKind::kRelL2);
  EXPECT_EQ(default_loss(Arch::kEnergy), LossKind::kRelL2);
  EXPECT_EQ(default_loss(Arch::kObservables), LossKind::kMse);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  autodiff::Param p("p", ComplexTensor({2}, {Complex(1, 1), Complex(0, 0)}));
  p.grad = ComplexTensor({2}, {Complex(1, -1), Complex(0, 0)});
  AdamState s;
  std::vector<autodiff::Param*> ps{&p};
  adam_step(ps, s, 0.1);
  const double move = 0.1 / (1.0 + 1e-8);
  EXPECT_NEAR(p.value[0].real(), 1.0 - move, 1e-15);
  EXPECT_NEAR(p.value[0].imag(), 1.0 + move, 1e-15);
  EXPECT_EQ(p.value[1], Complex(0, 0));
  EXPECT_EQ(s.step, 1u);
}

TEST(Adam, ConvergesOnQuadratic) {
  // f(z) = |z - c|^2, split-real gradient 2 (z - c)
  const Complex c(0.7, -1.3);
  autodiff::Param p("z", ComplexTensor({1}));
  AdamState s;
  std::vector<autodiff::Param*> ps{&p};
  for (int i = 0; i < 2000; ++i) {
    p.grad[0] = 2.0 * (p.value[0] - c);
    adam_step(ps, s, 0.05);
  }
  EXPECT_LT(std::abs(p.value[0] - c), 1e-3);
}

TEST(Adam, ClipScalesToMaxNorm) {
  autodiff::Param p("p", ComplexTensor({2}));
  p.grad = ComplexTensor({2}, {Complex(3, 0), Complex(0, 4)});
  std::vector<autodiff::Param*> ps{&p};
  EXPECT_DOUBLE_EQ(grad_norm(ps), 5.0);
  EXPECT_DOUBLE_EQ(clip_grad_norm(ps, 1.0), 5.0);
  EXPECT_NEAR(grad_norm(ps), 1.0, 1e-15);
  EXPECT_NEAR(p.grad[0].real(), 0.6, 1e-15);
  EXPECT_DOUBLE_EQ(clip_grad_norm(ps, 10.0), grad_norm(ps));
  EXPECT_NEAR(p.grad[1].imag(), 0.8, 1e-15);
}

TEST(Schedule, HalvesEveryStep) {
  TrainConfig c;
  c.lr = 1e-3;
  EXPECT_DOUBLE_EQ(c.lr_at(0), 1e-3);
  EXPECT_DOUBLE_EQ(c.lr_at(99), 1e-3);
  EXPECT_DOUBLE_EQ(c.lr_at(100), 5e-4);
  EXPECT_DOUBLE_EQ(c.lr_at(250), 2.5e-4);
  c.lr = -1;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Split, DisjointAndDeterministic) {
  const Split a = split_indices(100, 0.1, 4), b = split_indices(100, 0.1, 4), c = split_indices(100, 0.1, 5);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.validation.size(), 10u);
  EXPECT_EQ(a.train.size(), 90u);
  EXPECT_NE(a.validation, c.validation);
  std::vector<int> seen(100, 0);
  for (auto i : a.train) ++seen[i];
  for (auto i : a.validation) ++seen[i];
  for (int s : seen) EXPECT_EQ(s, 1);
  const Split one = split_indices(1, 0.1, 0);
  EXPECT_EQ(one.train, one.validation);
}

TEST(Batch, MatchesDatasetSamples) {
  const auto data = small_time_data(6);
  const std::vector<std::size_t> idx{4, 1};
  const Batch b = make_batch(data, idx);
  EXPECT_EQ(b.input.shape(), (Shape{6, 2, 15}));
  EXPECT_EQ(b.target.shape(), (Shape{4, 2, 15}));
  const ComplexTensor t4 = data.target(4);
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t j = 0; j < 15; ++j) EXPECT_EQ(b.target[(c * 2 + 0) * 15 + j], t4[c * 15 + j]);
}

TEST(Training, SmallStepDescends) {
  const auto data = small_time_data(8);
  const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5, 6, 7};
  int descended = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    fno::FnoModel m = tiny_time_model(seed);
    const Batch b = make_batch(data, all);
    auto ps = m.parameters();
    m.zero_grad();
    autodiff::Tape tape;
    tape.backward(tape.rel_l2(m.forward(tape, tape.constant(b.input)), b.target, 1));
    const double before = evaluate(m, data, all, LossKind::kRelL2).loss;
    // one plain gradient step at 1e-6
    for (auto* p : ps)
      for (std::size_t i = 0; i < p->value.size(); ++i) p->value[i] -= 1e-6 * p->grad[i];
    const double after = evaluate(m, data, all, LossKind::kRelL2).loss;
    if (after < before) ++descended;
  }
  EXPECT_EQ(descended, 10);
}

TEST(Training, OverfitsSmallSet) {
  const auto data = small_time_data(50);
  TrainConfig c;
  c.lr = 3e-3;
  c.epochs = 60;
  c.batch_size = 10;
  c.val_fraction = 0.0;
  const TrainResult r = train::train(tiny_time_model(1), data, c);
  ASSERT_EQ(r.metrics.size(), 60u);
  EXPECT_LT(r.metrics.back().train_loss, 0.5 * r.metrics.front().train_loss);
  // best-of-window decreases across 5-epoch windows
  for (std::size_t w = 5; w + 5 <= 60; w += 5) {
    double prev = 1e300, cur = 1e300;
    for (std::size_t e = w - 5; e < w; ++e) prev = std::min(prev, r.metrics[e].train_loss);
    for (std::size_t e = w; e < w + 5; ++e) cur = std::min(cur, r.metrics[e].train_loss);
    EXPECT_LE(cur, prev * 1.05) << "window " << w;
  }
  EXPECT_GT(r.metrics.back().val_fidelity, r.metrics.front().val_fidelity);
}

TEST(Training, DeterministicForSeed) {
  const auto data = small_time_data(20);
  TrainConfig c;
  c.epochs = 3;
  c.batch_size = 8;
  c.seed = 7;
  const TrainResult a = train::train(tiny_time_model(2), data, c);
  const TrainResult b = train::train(tiny_time_model(2), data, c);
  ASSERT_EQ(a.metrics.size(), b.metrics.size());
  for (std::size_t i = 0; i < a.metrics.size(); ++i) EXPECT_EQ(a.metrics[i].train_loss, b.metrics[i].train_loss);
  const auto pa = a.model.parameters(), pb = b.model.parameters();
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(max_abs_diff(pa[i]->value, pb[i]->value), 0.0) << pa[i]->name;
}

TEST(Training, ReferenceKernelsAgree) {
  const auto data = small_time_data(12);
  TrainConfig c;
  c.epochs = 2;
  c.batch_size = 4;
  const TrainResult a = train::train(tiny_time_model(3), data, c);
  c.kernels = autodiff::KernelPath::kReference;
  const TrainResult b = train::train(tiny_time_model(3), data, c);
  for (std::size_t i = 0; i < a.metrics.size(); ++i)
    EXPECT_NEAR(a.metrics[i].val_loss, b.metrics[i].val_loss, 1e-10);
}

TEST(Training, NonFiniteLossAborts) {
  auto data = small_time_data(10);
  data.inputs[3] = Complex(std::numeric_limits<double>::quiet_NaN(), 0);
  TrainConfig c;
  c.epochs = 1;
  EXPECT_THROW(train::train(tiny_time_model(4), data, c), NumericError);
}

TEST(Training, RejectsBadInputs) {
  auto data = small_time_data(10);
  TrainConfig c;
  c.epochs = 1;
  fno::ModelOptions o;
  o.width = 32;
  EXPECT_THROW(train::train(fno::make_observables_model(2, o), data, c), ValidationError);
  EXPECT_THROW(train::train(fno::make_time_model(3), data, c), ValidationError);
  evolve::Dataset empty = data;
  empty.inputs = ComplexTensor();
  empty.targets = ComplexTensor();
  EXPECT_THROW(train::train(tiny_time_model(4), empty, c), ValidationError);
  c.batch_size = 0;
  EXPECT_THROW(train::train(tiny_time_model(4), data, c), ValidationError);
}
