//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <utility>

#include <Eigen/Core>

#include "pairscore/error.hpp"

namespace pairscore {
namespace {
std::size_t element_count(const std::vector<std::size_t> &shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}
}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), data_(element_count(shape_), fill) { }

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != element_count(shape_)) {
    throw Error(ErrorCode::ShapeMismatch,
                "data length " + std::to_string(data_.size())
                    + " does not match shape " + shape_string(shape_));
  }
}

Tensor Tensor::vector(std::vector<double> values) {
  const std::size_t n = values.size();
  return Tensor({n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> values) {
  return Tensor({rows, cols}, std::move(values));
}

Tensor Tensor::matrix(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> values;
  values.reserve(r * c);
  for (const auto &row: rows) {
    if (row.size() != c) {
      throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return Tensor({r, c}, std::move(values));
}

void Tensor::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

std::string shape_string(const std::vector<std::size_t> &shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i > 0) out += "x";
    out += std::to_string(shape[i]);
  }
  return out + ")";
}

void gemm(const Tensor &a, bool transpose_a, const Tensor &b, bool transpose_b,
          Tensor &c, double beta) {
  const std::size_t m = transpose_a ? a.cols() : a.rows();
  const std::size_t ka = transpose_a ? a.rows() : a.cols();
  const std::size_t kb = transpose_b ? b.cols() : b.rows();
  const std::size_t n = transpose_b ? b.rows() : b.cols();
  if (ka != kb) {
    throw Error(ErrorCode::ShapeMismatch,
                "gemm inner dimensions " + shape_string(a.shape()) + " and "
                    + shape_string(b.shape()));
  }
  if (c.size() != m * n || (c.rank() == 2 && c.rows() != m)) {
    c = Tensor({m, n});
    beta = 0.0;
  }
  if (m == 0 || n == 0) return;
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Map = Eigen::Map<const Matrix>;
  const Map ma(a.data().data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  const Map mb(b.data().data(), static_cast<Eigen::Index>(b.rows()), static_cast<Eigen::Index>(b.cols()));
  Eigen::Map<Matrix> mc(c.data().data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  if (beta == 0.0) mc.setZero();
  else if (beta != 1.0) mc *= beta;
  if (transpose_a && transpose_b) mc.noalias() += ma.transpose() * mb.transpose();
  else if (transpose_a) mc.noalias() += ma.transpose() * mb;
  else if (transpose_b) mc.noalias() += ma * mb.transpose();
  else mc.noalias() += ma * mb;
}

void accumulate(Tensor &dst, const Tensor &src) {
  if (dst.size() != src.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                "accumulate " + shape_string(src.shape()) + " into "
                    + shape_string(dst.shape()));
  }
  auto d = dst.data();
  auto s = src.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += s[i];
}

}  // namespace pairscore
