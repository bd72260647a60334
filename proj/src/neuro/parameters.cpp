//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/neuro/parameters.hpp"

#include <cmath>

#include "pairscore/error.hpp"
#include "pairscore/rng.hpp"

namespace pairscore::neuro {

std::string_view group_name(ParamGroup g) noexcept {
  switch (g) {
  case ParamGroup::DrugEncoder: return "drug_encoder";
  case ParamGroup::ContextEncoder: return "context_encoder";
  case ParamGroup::Head: return "head";
  }
  return "unknown";
}

void ParameterStore::add(std::string name, ParamGroup group, Tensor value) {
  if (index_.contains(name)) {
    throw Error(ErrorCode::InvalidArgument, "duplicate parameter '" + name + "'");
  }
  index_.emplace(name, params_.size());
  params_.push_back(Parameter { std::move(name), group, std::move(value) });
}

std::optional<std::size_t> ParameterStore::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ParameterStore::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw Error(ErrorCode::InvalidArgument, "unknown parameter '" + std::string(name) + "'");
}

std::size_t ParameterStore::scalar_count() const noexcept {
  std::size_t n = 0;
  for (const auto &p: params_) n += p.value.size();
  return n;
}

std::size_t ParameterStore::scalar_count(ParamGroup group) const noexcept {
  std::size_t n = 0;
  for (const auto &p: params_) {
    if (p.group == group) n += p.value.size();
  }
  return n;
}

bool ParameterStore::operator==(const ParameterStore &other) const {
  if (params_.size() != other.params_.size()) return false;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const auto &a = params_[i];
    const auto &b = other.params_[i];
    if (a.name != b.name || a.group != b.group || a.value != b.value) return false;
  }
  return true;
}

ParameterStore init_params(std::span<const LayerSpec> layers, std::uint64_t seed) {
  ParameterStore store;
  Rng rng(seed);
  for (const LayerSpec &layer: layers) {
    if (layer.fan_in == 0 || layer.fan_out == 0) {
      throw Error(ErrorCode::InvalidArgument, "layer '" + layer.name + "' has a zero dimension");
    }
    const double bound =
        std::sqrt(6.0 / static_cast<double>(layer.fan_in + layer.fan_out));
    Tensor w({ layer.fan_in, layer.fan_out });
    for (double &x: w.data()) x = rng.uniform(-bound, bound);
    store.add(layer.name + ".weight", layer.group, std::move(w));
    if (layer.bias) store.add(layer.name + ".bias", layer.group, Tensor({ layer.fan_out }));
  }
  return store;
}

const Tensor &Gradients::at(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  throw Error(ErrorCode::InvalidArgument, "no gradient for '" + std::string(name) + "'");
}

}  // namespace pairscore::neuro
