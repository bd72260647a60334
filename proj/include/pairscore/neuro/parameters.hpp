//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PAIRSCORE_NEURO_PARAMETERS_HPP_
#define PAIRSCORE_NEURO_PARAMETERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pairscore/tensor.hpp"

namespace pairscore::neuro {

/// Which of the three parametric functions a parameter belongs to.
enum class ParamGroup : std::uint8_t { DrugEncoder, ContextEncoder, Head };

std::string_view group_name(ParamGroup g) noexcept;

struct Parameter {
  std::string name;
  ParamGroup group;
  Tensor value;
};

/// Ordered collection of uniquely named parameters.
class ParameterStore {
 public:
  /// Throws InvalidArgument on a repeated name.
  void add(std::string name, ParamGroup group, Tensor value);

  std::size_t size() const noexcept { return params_.size(); }
  bool empty() const noexcept { return params_.empty(); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws InvalidArgument for unknown names.
  std::size_t require(std::string_view name) const;

  Parameter &operator[](std::size_t i) { return params_[i]; }
  const Parameter &operator[](std::size_t i) const { return params_[i]; }
  Tensor &value(std::string_view name) { return params_[require(name)].value; }
  const Tensor &value(std::string_view name) const { return params_[require(name)].value; }

  auto begin() const noexcept { return params_.begin(); }
  auto end() const noexcept { return params_.end(); }

  /// Number of scalar entries, optionally restricted to one group.
  std::size_t scalar_count() const noexcept;
  std::size_t scalar_count(ParamGroup group) const noexcept;

  bool operator==(const ParameterStore &other) const;

 private:
  std::vector<Parameter> params_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One dense or graph-convolution layer: a fan_in x fan_out weight named
/// "<name>.weight" and, when `bias`, a zero vector "<name>.bias".
struct LayerSpec {
  std::string name;
  ParamGroup group;
  std::size_t fan_in;
  std::size_t fan_out;
  bool bias = true;
};

/// Glorot-uniform weights U(-a, a), a = sqrt(6 / (fan_in + fan_out)); zero
/// biases. Layers are initialized in order from one seeded stream.
ParameterStore init_params(std::span<const LayerSpec> layers, std::uint64_t seed);

/// Gradients aligned index-for-index with a ParameterStore.
struct Gradients {
  std::vector<std::string> names;
  std::vector<Tensor> values;

  const Tensor &at(std::string_view name) const;
  std::size_t size() const noexcept { return values.size(); }
};

}  // namespace pairscore::neuro

#endif  // PAIRSCORE_NEURO_PARAMETERS_HPP_
