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

#pragma once

#include "socnav/nn/tensor.hpp"

namespace socnav::nn {

/// Predictions are clamped into [eps, 1 - eps] before the logs.
inline constexpr double kBceClampEps = 1e-7;

/// Mean of -[y ln p + (1 - y) ln(1 - p)] over all entries. Throws on empty
/// or mismatched inputs.
double bce_loss(const Tensor2& predictions, const Tensor2& labels);

/// dL/dp for the mean BCE; zero where the clamp is active.
Tensor2 bce_grad(const Tensor2& predictions, const Tensor2& labels);

/// Mean of (p - y)^2 and its gradient; used by the value regression.
double mse_loss(const Tensor2& predictions, const Tensor2& targets);
Tensor2 mse_grad(const Tensor2& predictions, const Tensor2& targets);

}  // namespace socnav::nn
