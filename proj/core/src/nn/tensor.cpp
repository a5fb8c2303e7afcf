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

#include "socnav/nn/tensor.hpp"

#include <cmath>

#include "socnav/error.hpp"

namespace socnav::nn {

bool Tensor2::all_finite() const {
  for (const double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Tensor2 matmul(const Tensor2& a, const Tensor2& b) {
  if (a.cols != b.rows) throw ConfigError("matmul: inner dimension mismatch");
  Tensor2 c(a.rows, b.cols);
  add_matmul(a, b, c);
  return c;
}

void add_matmul(const Tensor2& a, const Tensor2& b, Tensor2& c) {
  if (a.cols != b.rows || c.rows != a.rows || c.cols != b.cols)
    throw ConfigError("add_matmul: dimension mismatch");
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double av = arow[k];
      if (av == 0.0) continue;
      const double* brow = b.row(k);
      for (std::size_t j = 0; j < b.cols; ++j) crow[j] += av * brow[j];
    }
  }
}

Tensor2 matmul_nt(const Tensor2& a, const Tensor2& b) {
  Tensor2 c(a.rows, b.rows);
  add_matmul_nt(a, b, c);
  return c;
}

void add_matmul_nt(const Tensor2& a, const Tensor2& b, Tensor2& c) {
  if (a.cols != b.cols || c.rows != a.rows || c.cols != b.rows)
    throw ConfigError("add_matmul_nt: dimension mismatch");
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (std::size_t j = 0; j < b.rows; ++j) {
      const double* brow = b.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
      crow[j] += acc;
    }
  }
}

void add_matmul_tn(const Tensor2& a, const Tensor2& b, Tensor2& c) {
  if (a.rows != b.rows || c.rows != a.cols || c.cols != b.cols)
    throw ConfigError("add_matmul_tn: dimension mismatch");
  for (std::size_t l = 0; l < a.rows; ++l) {
    const double* arow = a.row(l);
    const double* brow = b.row(l);
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double av = arow[i];
      if (av == 0.0) continue;
      double* crow = c.row(i);
      for (std::size_t j = 0; j < b.cols; ++j) crow[j] += av * brow[j];
    }
  }
}

void add_row_inplace(Tensor2& a, const Tensor2& b) {
  if (b.rows != 1 || b.cols != a.cols)
    throw ConfigError("add_row_inplace: shape mismatch");
  for (std::size_t i = 0; i < a.rows; ++i) {
    double* arow = a.row(i);
    for (std::size_t j = 0; j < a.cols; ++j) arow[j] += b.data[j];
  }
}

void add_col_sums(const Tensor2& a, Tensor2& out) {
  if (out.rows != 1 || out.cols != a.cols)
    throw ConfigError("add_col_sums: shape mismatch");
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.row(i);
    for (std::size_t j = 0; j < a.cols; ++j) out.data[j] += arow[j];
  }
}

void add_inplace(Tensor2& a, const Tensor2& b) {
  if (!a.same_shape(b)) throw ConfigError("add_inplace: shape mismatch");
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
}

void hadamard_inplace(Tensor2& a, const Tensor2& b) {
  if (!a.same_shape(b)) throw ConfigError("hadamard_inplace: shape mismatch");
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] *= b.data[i];
}

}  // namespace socnav::nn
