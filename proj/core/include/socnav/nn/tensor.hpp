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

#include <cstddef>
#include <vector>

namespace socnav::nn {

/// Dense row-major matrix of 64-bit floats. The only tensor rank the
/// network substrate needs; vectors are 1 x n.
struct Tensor2 {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Tensor2() = default;
  Tensor2(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) {
    return data[r * cols + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }

  double* row(std::size_t r) { return data.data() + r * cols; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }

  std::size_t size() const { return data.size(); }
  bool empty() const { return data.empty(); }
  bool same_shape(const Tensor2& o) const {
    return rows == o.rows && cols == o.cols;
  }
  bool all_finite() const;

  void fill(double v) { data.assign(rows * cols, v); }

  static Tensor2 zeros_like(const Tensor2& t) {
    return Tensor2(t.rows, t.cols);
  }
};

/// C = A * B, shapes (m x k) * (k x n).
Tensor2 matmul(const Tensor2& a, const Tensor2& b);
/// C = A * B^T, shapes (m x k) * (n x k) -> m x n.
Tensor2 matmul_nt(const Tensor2& a, const Tensor2& b);
/// C += A * B^T.
void add_matmul_nt(const Tensor2& a, const Tensor2& b, Tensor2& c);
/// C += A^T * B, shapes (k x m) * (k x n) -> m x n.
void add_matmul_tn(const Tensor2& a, const Tensor2& b, Tensor2& c);
/// C += A * B, shapes (m x k) * (k x n).
void add_matmul(const Tensor2& a, const Tensor2& b, Tensor2& c);

/// Adds the 1 x n row vector b to every row of a.
void add_row_inplace(Tensor2& a, const Tensor2& b);
/// Column sums as a 1 x n row vector, accumulated into out.
void add_col_sums(const Tensor2& a, Tensor2& out);

void add_inplace(Tensor2& a, const Tensor2& b);
void hadamard_inplace(Tensor2& a, const Tensor2& b);

}  // namespace socnav::nn
