//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_TENSOR_HPP_
#define PAIRSCORE_TENSOR_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pairscore {

/// Dense row-major array of 64-bit reals. Rank 0 (scalar), 1 and 2 are used
/// throughout; higher ranks are representable but have no arithmetic.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor scalar(double value) { return Tensor({}, {value}); }
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values);
  static Tensor matrix(std::initializer_list<std::initializer_list<double>> rows);

  const std::vector<std::size_t> &shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  // Matrix views; a rank-1 tensor is a 1 x n row.
  std::size_t rows() const noexcept { return shape_.size() < 2 ? 1 : shape_[0]; }
  std::size_t cols() const noexcept { return shape_.empty() ? 1 : shape_.back(); }

  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols() + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols() + c];
  }
  double &operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols(), cols()}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols(), cols()};
  }

  void fill(double value);

  bool operator==(const Tensor &other) const = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

std::string shape_string(const std::vector<std::size_t> &shape);

// Dense kernels shared by the numeric core. All throw ShapeMismatch.

/// c = op(a) * op(b) + beta * c, where op transposes when requested.
void gemm(const Tensor &a, bool transpose_a, const Tensor &b, bool transpose_b,
          Tensor &c, double beta = 0.0);

/// Adds `src` into `dst` elementwise.
void accumulate(Tensor &dst, const Tensor &src);

}  // namespace pairscore

#endif  // PAIRSCORE_TENSOR_HPP_
