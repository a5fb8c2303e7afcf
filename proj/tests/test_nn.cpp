// Copyright (c) 2026 The socnav authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "socnav/error.hpp"
#include "socnav/nn/layers.hpp"
#include "socnav/nn/loss.hpp"
#include "socnav/nn/net.hpp"
#include "socnav/nn/rmsprop.hpp"
#include "socnav/nn/serialize.hpp"
#include "socnav/nn/tensor.hpp"
#include "socnav/rng.hpp"

using namespace socnav;
using namespace socnav::nn;

namespace {

Tensor2 random_tensor(std::size_t rows, std::size_t cols, Rng& rng,
                      double lo = -1.0, double hi = 1.0) {
  Tensor2 t(rows, cols);
  for (double& v : t.data) v = rng.uniform(lo, hi);
  return t;
}

GruParams zero_gru(std::size_t input, std::size_t hidden) {
  GruParams p;
  p.input_size = input;
  p.hidden_size = hidden;
  p.Wz = Tensor2(hidden, input);
  p.Wr = Tensor2(hidden, input);
  p.Wh = Tensor2(hidden, input);
  p.Uz = Tensor2(hidden, hidden);
  p.Ur = Tensor2(hidden, hidden);
  p.Uh = Tensor2(hidden, hidden);
  p.bz = Tensor2(1, hidden);
  p.br = Tensor2(1, hidden);
  p.bh = Tensor2(1, hidden);
  return p;
}

double sigmoid_scalar(double v) { return 1.0 / (1.0 + std::exp(-v)); }

// Independent scalar-loop evaluation of the gate equations, written against
// the definitions rather than the Tensor2 helpers.
std::vector<double> gru_scalar_oracle(const std::vector<double>& x,
                                      const std::vector<double>& h,
                                      const GruParams& p) {
  const std::size_t H = p.hidden_size;
  const std::size_t I = p.input_size;
  std::vector<double> out(H);
  for (std::size_t j = 0; j < H; ++j) {
    double az = p.bz.data[j];
    double ar = p.br.data[j];
    for (std::size_t k = 0; k < I; ++k) {
      az += p.Wz(j, k) * x[k];
      ar += p.Wr(j, k) * x[k];
    }
    for (std::size_t k = 0; k < H; ++k) {
      az += p.Uz(j, k) * h[k];
      ar += p.Ur(j, k) * h[k];
    }
    const double z = sigmoid_scalar(az);
    const double r = sigmoid_scalar(ar);
    (void)r;
    double ah = p.bh.data[j];
    for (std::size_t k = 0; k < I; ++k) ah += p.Wh(j, k) * x[k];
    for (std::size_t k = 0; k < H; ++k) {
      double rk = p.br.data[k];
      for (std::size_t m = 0; m < I; ++m) rk += p.Wr(k, m) * x[m];
      for (std::size_t m = 0; m < H; ++m) rk += p.Ur(k, m) * h[m];
      ah += p.Uh(j, k) * sigmoid_scalar(rk) * h[k];
    }
    const double hcand = std::tanh(ah);
    out[j] = (1.0 - z) * h[j] + z * hcand;
  }
  return out;
}

double train_loss(GruMlpNet& net, const std::vector<Tensor2>& seq,
                  const Tensor2& labels) {
  const Tensor2 out = net_forward(net, seq, Mode::kTrain);
  return bce_loss(out, labels);
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// Central finite difference on every parameter against the analytic
// reverse-mode gradients of the mean BCE.
void check_gradients_fd(GruMlpNet& net, const std::vector<Tensor2>& seq,
                        const Tensor2& labels) {
  NetCache cache;
  const Tensor2 out = net_forward(net, seq, Mode::kTrain, &cache);
  NetGrads grads = zero_grads(net);
  net_backward(net, cache, bce_grad(out, labels), grads);

  const std::vector<Tensor2*> params = param_refs(net);
  const NetGrads& cgrads = grads;
  const std::vector<const Tensor2*> analytic = grad_refs(cgrads);
  REQUIRE(params.size() == analytic.size());

  const double h = 1e-5;
  double worst = 0.0;
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor2& theta = *params[p];
    for (std::size_t i = 0; i < theta.data.size(); ++i) {
      const double saved = theta.data[i];
      theta.data[i] = saved + h;
      const double lp = train_loss(net, seq, labels);
      theta.data[i] = saved - h;
      const double lm = train_loss(net, seq, labels);
      theta.data[i] = saved;
      const double fd = (lp - lm) / (2.0 * h);
      const double err = rel_err(analytic[p]->data[i], fd);
      if (err > worst) worst = err;
      INFO("param set ", p, " entry ", i, " analytic ", analytic[p]->data[i],
           " fd ", fd);
      REQUIRE(err < 1e-4);
    }
  }
  CHECK(worst < 1e-4);
}

bool bitwise_equal(const Tensor2& a, const Tensor2& b) {
  if (!a.same_shape(b)) return false;
  return std::memcmp(a.data.data(), b.data.data(),
                     a.data.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("matmul rejects mismatched shapes") {
  Tensor2 a(2, 3), b(4, 2);
  CHECK_THROWS_AS(matmul(a, b), ConfigError);
  CHECK_THROWS_AS(matmul_nt(a, b), ConfigError);
}

TEST_CASE("gru with zero parameters halves the hidden state") {
  GruParams p = zero_gru(2, 3);
  Tensor2 x(1, 2);
  x(0, 0) = 0.4;
  x(0, 1) = -1.7;
  Tensor2 h(1, 3);
  h(0, 0) = 0.8;
  h(0, 1) = -0.2;
  h(0, 2) = 0.05;
  const Tensor2 h_new = gru_cell_forward(x, h, p);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(h_new(0, j) == 0.5 * h(0, j));
  }
}

TEST_CASE("gru with zero parameters keeps zero hidden state at zero") {
  GruParams p = zero_gru(2, 3);
  Tensor2 x(1, 2, 0.9);
  Tensor2 h(1, 3);
  const Tensor2 h_new = gru_cell_forward(x, h, p);
  for (double v : h_new.data) CHECK(v == 0.0);
}

TEST_CASE("gru forward matches a scalar-loop evaluation of the gates") {
  Rng rng(20260301);
  for (int trial = 0; trial < 20; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    GruParams p = make_gru(4, 6, sub);
    Tensor2 x = random_tensor(1, 4, sub);
    Tensor2 h = random_tensor(1, 6, sub);
    const Tensor2 got = gru_cell_forward(x, h, p);
    const std::vector<double> want =
        gru_scalar_oracle(x.data, h.data, p);
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(got(0, j) == doctest::Approx(want[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("gru output stays inside (-1,1) when the hidden state does") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(trial));
    GruParams p = make_gru(3, 5, sub);
    Tensor2 x = random_tensor(2, 3, sub, -5.0, 5.0);
    Tensor2 h = random_tensor(2, 5, sub, -0.999, 0.999);
    const Tensor2 h_new = gru_cell_forward(x, h, p);
    for (double v : h_new.data) {
      CHECK(v > -1.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("gru rejects mismatched dimensions") {
  GruParams p = zero_gru(2, 3);
  Tensor2 x(1, 5), h(1, 3);
  CHECK_THROWS_AS(gru_cell_forward(x, h, p), ConfigError);
  Tensor2 x2(1, 2), h2(1, 4);
  CHECK_THROWS_AS(gru_cell_forward(x2, h2, p), ConfigError);
}

TEST_CASE("dense relu with identity weights clips negatives") {
  DenseLayer layer;
  layer.W = Tensor2(2, 2);
  layer.W(0, 0) = 1.0;
  layer.W(1, 1) = 1.0;
  layer.b = Tensor2(1, 2);
  layer.activation = Activation::kRelu;
  Tensor2 x(1, 2);
  x(0, 0) = -1.0;
  x(0, 1) = 2.0;
  const Tensor2 y = dense_forward(x, layer);
  CHECK(y(0, 0) == 0.0);
  CHECK(y(0, 1) == 2.0);
}

TEST_CASE("dense sigmoid of a zero pre-activation is one half") {
  DenseLayer layer;
  layer.W = Tensor2(1, 3);
  layer.b = Tensor2(1, 1);
  layer.activation = Activation::kSigmoid;
  Tensor2 x(1, 3, 42.0);
  const Tensor2 y = dense_forward(x, layer);
  CHECK(y(0, 0) == 0.5);
}

TEST_CASE("train-mode batchnorm normalizes {1,3} to +-1") {
  DenseLayer layer;
  layer.W = Tensor2(1, 1);
  layer.W(0, 0) = 1.0;
  layer.b = Tensor2(1, 1);
  layer.activation = Activation::kIdentity;
  BatchNorm bn;
  bn.gamma = Tensor2(1, 1, 2.0);
  bn.beta = Tensor2(1, 1, 5.0);
  bn.running_mean = Tensor2(1, 1);
  bn.running_var = Tensor2(1, 1, 1.0);
  layer.batchnorm = bn;

  Tensor2 x(2, 1);
  x(0, 0) = 1.0;
  x(1, 0) = 3.0;
  DenseCache cache;
  const Tensor2 y = dense_forward(x, layer, Mode::kTrain, &cache);

  const double unit = 1.0 / std::sqrt(1.0 + layer.batchnorm->epsilon);
  CHECK(cache.xhat(0, 0) == doctest::Approx(-unit).epsilon(1e-14));
  CHECK(cache.xhat(1, 0) == doctest::Approx(unit).epsilon(1e-14));
  CHECK(y(0, 0) == doctest::Approx(5.0 - 2.0 * unit).epsilon(1e-14));
  CHECK(y(1, 0) == doctest::Approx(5.0 + 2.0 * unit).epsilon(1e-14));

  // momentum 0.1: stats move one tenth of the way toward the batch values.
  CHECK(layer.batchnorm->running_mean(0, 0) == doctest::Approx(0.2));
  CHECK(layer.batchnorm->running_var(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("train-mode batchnorm rejects a batch of one") {
  Rng rng(3);
  DenseLayer layer = make_dense(2, 2, Activation::kRelu, true, rng);
  Tensor2 x(1, 2, 1.0);
  CHECK_THROWS_AS(dense_forward(x, layer, Mode::kTrain), ConfigError);
  CHECK_NOTHROW(dense_forward(x, layer, Mode::kInfer));
}

TEST_CASE("bce loss matches hand arithmetic") {
  Tensor2 p1(1, 1, 1.0), y1(1, 1, 1.0);
  CHECK(bce_loss(p1, y1) < 1e-6);

  Tensor2 p2(1, 1, 0.5), y2(1, 1, 0.0);
  CHECK(bce_loss(p2, y2) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Tensor2 p3(2, 1), y3(2, 1);
  p3(0, 0) = 0.9;
  y3(0, 0) = 1.0;
  p3(1, 0) = 0.2;
  y3(1, 0) = 0.0;
  const double want = (-std::log(0.9) - std::log(0.8)) / 2.0;
  CHECK(bce_loss(p3, y3) == doctest::Approx(want).epsilon(1e-12));
  CHECK(bce_loss(p3, y3) == doctest::Approx(0.1643).epsilon(1e-3));

  Tensor2 empty;
  CHECK_THROWS_AS(bce_loss(empty, empty), ConfigError);
}

TEST_CASE("single sigmoid layer gradient equals the closed form") {
  DenseLayer layer;
  layer.W = Tensor2(1, 1);
  layer.W(0, 0) = 0.4;
  layer.b = Tensor2(1, 1, -0.2);
  layer.activation = Activation::kSigmoid;

  Tensor2 x(1, 1, 0.7);
  Tensor2 y(1, 1, 1.0);
  DenseCache cache;
  const Tensor2 p = dense_forward(x, layer, Mode::kTrain, &cache);

  DenseGrads grads = zero_grads(layer);
  dense_backward(bce_grad(p, y), layer, cache, grads);

  // dL/dz = p - y once the BCE grad passes through the sigmoid.
  const double pv = p(0, 0);
  CHECK(grads.dW(0, 0) == doctest::Approx((pv - 1.0) * 0.7).epsilon(1e-10));
  CHECK(grads.db(0, 0) == doctest::Approx(pv - 1.0).epsilon(1e-10));
}

TEST_CASE("saturated predictions produce zero gradients") {
  Rng rng(11);
  GruMlpNet net;
  net.gru = make_gru(2, 4, rng);
  net.layers.push_back(make_dense(4, 3, Activation::kRelu, false, rng));
  net.layers.push_back(make_dense(3, 1, Activation::kSigmoid, false, rng));
  // A huge output bias pins the sigmoid inside the clamp band.
  net.layers.back().b.fill(40.0);
  net.layers.back().W.fill(0.0);

  std::vector<Tensor2> seq = {random_tensor(2, 2, rng),
                              random_tensor(2, 2, rng)};
  Tensor2 labels(2, 1, 1.0);

  NetCache cache;
  const Tensor2 out = net_forward(net, seq, Mode::kTrain, &cache);
  CHECK(out(0, 0) > 1.0 - 1e-7);

  NetGrads grads = zero_grads(net);
  net_backward(net, cache, bce_grad(out, labels), grads);
  double norm_sq = 0.0;
  const NetGrads& cg = grads;
  for (const Tensor2* g : grad_refs(cg))
    for (double v : g->data) norm_sq += v * v;
  CHECK(std::sqrt(norm_sq) < 1e-6);
}

TEST_CASE("finite differences confirm the reverse-mode gradients") {
  SUBCASE("smooth net with batchnorm") {
    Rng rng(20260401);
    GruMlpNet net;
    net.gru = make_gru(3, 5, rng);
    net.layers.push_back(make_dense(5, 4, Activation::kSigmoid, true, rng));
    net.layers.push_back(make_dense(4, 1, Activation::kSigmoid, false, rng));

    std::vector<Tensor2> seq;
    for (int t = 0; t < 4; ++t) seq.push_back(random_tensor(3, 3, rng));
    Tensor2 labels(3, 1);
    labels(0, 0) = 1.0;
    labels(2, 0) = 1.0;
    check_gradients_fd(net, seq, labels);
  }

  SUBCASE("relu net with batchnorm") {
    Rng rng(20260402);
    GruMlpNet net;
    net.gru = make_gru(3, 5, rng);
    net.layers.push_back(make_dense(5, 4, Activation::kRelu, true, rng));
    net.layers.push_back(make_dense(4, 3, Activation::kRelu, true, rng));
    net.layers.push_back(make_dense(3, 1, Activation::kSigmoid, false, rng));

    std::vector<Tensor2> seq;
    for (int t = 0; t < 3; ++t) seq.push_back(random_tensor(4, 3, rng));
    Tensor2 labels(4, 1);
    labels(1, 0) = 1.0;
    labels(3, 0) = 1.0;
    check_gradients_fd(net, seq, labels);
  }
}

TEST_CASE("rmsprop leaves parameters alone on zero gradients") {
  Tensor2 theta(1, 1, 1.5);
  Tensor2 g1(1, 1, 1.0);
  Tensor2 g0(1, 1, 0.0);
  std::vector<Tensor2*> params = {&theta};
  RmsPropState state = make_rmsprop(params, RmsPropConfig{});

  rmsprop_step(state, params, {&g1});
  const double after_first = theta(0, 0);
  CHECK(state.mean_square[0](0, 0) == doctest::Approx(0.1).epsilon(1e-12));

  rmsprop_step(state, params, {&g0});
  CHECK(theta(0, 0) == after_first);
  CHECK(state.mean_square[0](0, 0) == doctest::Approx(0.09).epsilon(1e-12));
}

TEST_CASE("rmsprop first step magnitude matches hand arithmetic") {
  Tensor2 theta(1, 1, 0.0);
  Tensor2 g(1, 1, 1.0);
  std::vector<Tensor2*> params = {&theta};
  RmsPropState state = make_rmsprop(params, RmsPropConfig{});
  rmsprop_step(state, params, {&g});
  const double want = -0.001 / (std::sqrt(0.1) + 1e-8);
  CHECK(theta(0, 0) == doctest::Approx(want).epsilon(1e-12));
  CHECK(theta(0, 0) == doctest::Approx(-0.003162).epsilon(1e-3));
}

TEST_CASE("repeated identical gradients drive the step toward lr") {
  Tensor2 theta(1, 1, 0.0);
  Tensor2 g(1, 1, 2.0);
  std::vector<Tensor2*> params = {&theta};
  RmsPropState state = make_rmsprop(params, RmsPropConfig{});
  double last_step = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double before = theta(0, 0);
    rmsprop_step(state, params, {&g});
    last_step = std::abs(theta(0, 0) - before);
  }
  CHECK(last_step == doctest::Approx(0.001).epsilon(1e-6));
}

TEST_CASE("training is bit-deterministic for a fixed seed") {
  auto run = [](std::uint64_t seed) {
    Rng rng(seed);
    GruMlpNet net;
    net.gru = make_gru(4, 8, rng);
    net.layers.push_back(make_dense(8, 6, Activation::kRelu, true, rng));
    net.layers.push_back(make_dense(6, 1, Activation::kSigmoid, false, rng));

    Rng data = rng.fork("data");
    std::vector<Tensor2> seq;
    for (int t = 0; t < 5; ++t) seq.push_back(random_tensor(6, 4, data));
    Tensor2 labels(6, 1);
    for (std::size_t i = 0; i < 6; ++i)
      labels(i, 0) = data.uniform() < 0.5 ? 0.0 : 1.0;

    std::vector<Tensor2*> params = param_refs(net);
    RmsPropState opt = make_rmsprop(params, RmsPropConfig{});
    for (int step = 0; step < 30; ++step) {
      NetCache cache;
      const Tensor2 out = net_forward(net, seq, Mode::kTrain, &cache);
      NetGrads grads = zero_grads(net);
      net_backward(net, cache, bce_grad(out, labels), grads);
      const NetGrads& cg = grads;
      rmsprop_step(opt, params, grad_refs(cg));
    }
    CHECK(net_finite(net));
    return net;
  };

  const GruMlpNet a = run(12345);
  const GruMlpNet b = run(12345);
  const std::vector<const Tensor2*> pa = param_refs(a);
  const std::vector<const Tensor2*> pb = param_refs(b);
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(bitwise_equal(*pa[i], *pb[i]));
  }
}

TEST_CASE("infer-mode batchnorm converges to train-mode output") {
  Rng rng(99);
  DenseLayer layer = make_dense(3, 4, Activation::kRelu, true, rng);
  Tensor2 x = random_tensor(8, 3, rng, -2.0, 2.0);

  Tensor2 train_out;
  for (int i = 0; i < 300; ++i) {
    train_out = dense_forward(x, layer, Mode::kTrain);
  }
  const Tensor2 infer_out = dense_forward(x, layer, Mode::kInfer);
  REQUIRE(infer_out.same_shape(train_out));
  for (std::size_t i = 0; i < infer_out.data.size(); ++i) {
    CHECK(infer_out.data[i] == doctest::Approx(train_out.data[i]).epsilon(1e-6));
  }
}

TEST_CASE("hex-float strings round-trip doubles bit for bit") {
  const double values[] = {0.0,
                           -0.0,
                           0.1,
                           1.0 / 3.0,
                           1e-300,
                           std::numeric_limits<double>::denorm_min(),
                           std::numeric_limits<double>::max(),
                           -123.456789e10,
                           std::numbers::pi};
  for (const double v : values) {
    const double back = double_from_hex(double_to_hex(v));
    CHECK(std::bit_cast<std::uint64_t>(back) ==
          std::bit_cast<std::uint64_t>(v));
  }
  CHECK_THROWS_AS(double_from_hex("not a number"), DataError);
  CHECK_THROWS_AS(double_from_hex("0x1p+1 trailing"), DataError);
}

TEST_CASE("weight serialization round-trips bit for bit") {
  Rng rng(424242);
  GruMlpNet net;
  net.gru = make_gru(4, 6, rng);
  net.layers.push_back(make_dense(6, 5, Activation::kRelu, true, rng));
  net.layers.push_back(make_dense(5, 1, Activation::kSigmoid, false, rng));

  // Move the running stats and the optimizer off their defaults.
  std::vector<Tensor2> seq = {random_tensor(4, 4, rng),
                              random_tensor(4, 4, rng)};
  Tensor2 labels(4, 1, 1.0);
  std::vector<Tensor2*> params = param_refs(net);
  RmsPropState opt = make_rmsprop(params, RmsPropConfig{});
  for (int step = 0; step < 3; ++step) {
    NetCache cache;
    const Tensor2 out = net_forward(net, seq, Mode::kTrain, &cache);
    NetGrads grads = zero_grads(net);
    net_backward(net, cache, bce_grad(out, labels), grads);
    const NetGrads& cg = grads;
    rmsprop_step(opt, params, grad_refs(cg));
  }

  const std::string doc = net_to_json_string(net, &opt);
  std::optional<RmsPropState> opt_back;
  const GruMlpNet back = net_from_json_string(doc, &opt_back);

  const std::vector<const Tensor2*> pa = param_refs(std::as_const(net));
  const std::vector<const Tensor2*> pb = param_refs(std::as_const(back));
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) CHECK(bitwise_equal(*pa[i], *pb[i]));
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    if (!net.layers[l].batchnorm) continue;
    CHECK(bitwise_equal(net.layers[l].batchnorm->running_mean,
                        back.layers[l].batchnorm->running_mean));
    CHECK(bitwise_equal(net.layers[l].batchnorm->running_var,
                        back.layers[l].batchnorm->running_var));
  }
  REQUIRE(opt_back.has_value());
  REQUIRE(opt_back->mean_square.size() == opt.mean_square.size());
  for (std::size_t i = 0; i < opt.mean_square.size(); ++i)
    CHECK(bitwise_equal(opt.mean_square[i], opt_back->mean_square[i]));
  CHECK(opt_back->config.learning_rate == opt.config.learning_rate);

  // Infer outputs of the two nets agree exactly.
  const Tensor2 out_a = net_forward(net, seq);
  const Tensor2 out_b = net_forward(back, seq);
  CHECK(bitwise_equal(out_a, out_b));
}

TEST_CASE("weight loading rejects malformed documents") {
  CHECK_THROWS_AS(net_from_json_string("not json"), DataError);
  CHECK_THROWS_AS(net_from_json_string("{\"schema_version\": 999}"), DataError);
  CHECK_THROWS_AS(
      net_from_json_string(
          "{\"schema_version\": 1, \"kind\": \"gru_mlp\", \"gru\": "
          "{\"input_size\": 1, \"hidden_size\": 1, \"Wz\": {\"rows\": 1, "
          "\"cols\": 1, \"data\": []}}, \"layers\": []}"),
      DataError);
}

TEST_CASE("net forward rejects an empty sequence") {
  Rng rng(5);
  GruMlpNet net;
  net.gru = make_gru(2, 3, rng);
  std::vector<Tensor2> seq;
  CHECK_THROWS_AS(net_forward(net, seq), ConfigError);
}
