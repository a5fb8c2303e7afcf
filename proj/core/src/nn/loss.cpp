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

#include "socnav/nn/loss.hpp"

#include <algorithm>
#include <cmath>

#include "socnav/error.hpp"

namespace socnav::nn {

namespace {

void check_pair(const Tensor2& a, const Tensor2& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ConfigError(std::string(what) + ": shape mismatch");
  }
  if (a.data.empty()) {
    throw ConfigError(std::string(what) + ": empty input");
  }
}

}  // namespace

double bce_loss(const Tensor2& predictions, const Tensor2& labels) {
  check_pair(predictions, labels, "bce_loss");
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.data.size(); ++i) {
    const double p =
        std::clamp(predictions.data[i], kBceClampEps, 1.0 - kBceClampEps);
    const double y = labels.data[i];
    total -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
  }
  return total / static_cast<double>(predictions.data.size());
}

Tensor2 bce_grad(const Tensor2& predictions, const Tensor2& labels) {
  check_pair(predictions, labels, "bce_grad");
  Tensor2 grad(predictions.rows, predictions.cols);
  const double inv_n = 1.0 / static_cast<double>(predictions.data.size());
  for (std::size_t i = 0; i < predictions.data.size(); ++i) {
    const double raw = predictions.data[i];
    if (raw <= kBceClampEps || raw >= 1.0 - kBceClampEps) {
      grad.data[i] = 0.0;
      continue;
    }
    const double y = labels.data[i];
    grad.data[i] = inv_n * (raw - y) / (raw * (1.0 - raw));
  }
  return grad;
}

double mse_loss(const Tensor2& predictions, const Tensor2& targets) {
  check_pair(predictions, targets, "mse_loss");
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.data.size(); ++i) {
    const double d = predictions.data[i] - targets.data[i];
    total += d * d;
  }
  return total / static_cast<double>(predictions.data.size());
}

Tensor2 mse_grad(const Tensor2& predictions, const Tensor2& targets) {
  check_pair(predictions, targets, "mse_grad");
  Tensor2 grad(predictions.rows, predictions.cols);
  const double inv_n = 2.0 / static_cast<double>(predictions.data.size());
  for (std::size_t i = 0; i < predictions.data.size(); ++i) {
    grad.data[i] = inv_n * (predictions.data[i] - targets.data[i]);
  }
  return grad;
}

}  // namespace socnav::nn
