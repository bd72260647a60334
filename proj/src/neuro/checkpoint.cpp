//
// pairscore - Copyright 2026 The pairscore Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "pairscore/neuro/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "pairscore/error.hpp"

namespace pairscore::neuro {
namespace {
constexpr char kMagic[4] = { 'P', 'S', 'C', 'K' };

class Writer {
 public:
  template <class U>
  void uint(U x) {
    for (std::size_t i = 0; i < sizeof(U); ++i) out_.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
  }
  void real(double x) { uint(std::bit_cast<std::uint64_t>(x)); }
  void str(std::string_view s) {
    uint(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) { }

  template <class U>
  U uint() {
    need(sizeof(U));
    U x = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      x |= static_cast<U>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(U);
    return x;
  }
  double real() { return std::bit_cast<double>(uint<std::uint64_t>()); }
  std::string str() {
    const auto n = uint<std::uint32_t>();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error(ErrorCode::CheckpointFormat, "truncated checkpoint");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};
}  // namespace

std::string encode_checkpoint(const Checkpoint &ckpt) {
  Writer w;
  for (char c: kMagic) w.uint(static_cast<std::uint8_t>(c));
  w.uint(kCheckpointVersion);
  w.str(ckpt.model);
  w.str(ckpt.hyperparameters);
  w.uint(static_cast<std::uint32_t>(ckpt.params.size()));
  for (const Parameter &p: ckpt.params) {
    w.str(p.name);
    w.uint(static_cast<std::uint8_t>(p.group));
    w.uint(static_cast<std::uint32_t>(p.value.rank()));
    for (std::size_t d: p.value.shape()) w.uint(static_cast<std::uint64_t>(d));
    for (double x: p.value.data()) w.real(x);
  }
  return w.take();
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  Reader r(bytes);
  for (char c: kMagic) {
    if (r.uint<std::uint8_t>() != static_cast<std::uint8_t>(c)) {
      throw Error(ErrorCode::CheckpointFormat, "bad magic");
    }
  }
  const auto version = r.uint<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::CheckpointFormat, "unsupported version " + std::to_string(version));
  }
  Checkpoint ckpt;
  ckpt.model = r.str();
  ckpt.hyperparameters = r.str();
  const auto n = r.uint<std::uint32_t>();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string name = r.str();
    const auto group = r.uint<std::uint8_t>();
    if (group > static_cast<std::uint8_t>(ParamGroup::Head)) {
      throw Error(ErrorCode::CheckpointFormat, "bad group for '" + name + "'");
    }
    const auto rank = r.uint<std::uint32_t>();
    std::vector<std::size_t> shape(rank);
    std::uint64_t count = 1;
    for (auto &d: shape) {
      d = static_cast<std::size_t>(r.uint<std::uint64_t>());
      count *= d;
    }
    if (count > r.remaining() / 8) throw Error(ErrorCode::CheckpointFormat, "truncated tensor '" + name + "'");
    std::vector<double> data(count);
    for (double &x: data) x = r.real();
    try {
      ckpt.params.add(std::move(name), static_cast<ParamGroup>(group),
                      Tensor(std::move(shape), std::move(data)));
    } catch (const Error &e) {
      throw Error(ErrorCode::CheckpointFormat, e.detail());
    }
  }
  if (!r.done()) throw Error(ErrorCode::CheckpointFormat, "trailing bytes");
  return ckpt;
}

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
  const std::string bytes = encode_checkpoint(ckpt);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace pairscore::neuro
