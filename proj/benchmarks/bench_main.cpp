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

#include <benchmark/benchmark.h>

#include <vector>

#include "socnav/nn/layers.hpp"
#include "socnav/nn/net.hpp"
#include "socnav/rng.hpp"

namespace {

using namespace socnav;
using namespace socnav::nn;

GruMlpNet make_classifier_net(Rng& rng) {
  GruMlpNet net;
  net.gru = make_gru(4, 64, rng);
  net.layers.push_back(make_dense(64, 32, Activation::kRelu, true, rng));
  net.layers.push_back(make_dense(32, 16, Activation::kRelu, true, rng));
  net.layers.push_back(make_dense(16, 8, Activation::kRelu, true, rng));
  net.layers.push_back(make_dense(8, 1, Activation::kSigmoid, false, rng));
  return net;
}

std::vector<Tensor2> make_sequence(std::size_t steps, std::size_t batch,
                                   std::size_t width, Rng& rng) {
  std::vector<Tensor2> seq;
  seq.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Tensor2 x(batch, width);
    for (double& v : x.data) v = rng.uniform(-1.0, 1.0);
    seq.push_back(std::move(x));
  }
  return seq;
}

void BM_ClassifierForward(benchmark::State& state) {
  Rng rng(7);
  const GruMlpNet net = make_classifier_net(rng);
  const auto batch = static_cast<std::size_t>(state.range(0));
  const std::vector<Tensor2> seq = make_sequence(16, batch, 4, rng);
  for (auto _ : state) {
    Tensor2 out = net_forward(net, seq);
    benchmark::DoNotOptimize(out.data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(batch));
}
BENCHMARK(BM_ClassifierForward)->Arg(1)->Arg(16)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
