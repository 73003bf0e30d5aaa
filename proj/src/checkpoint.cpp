// Copyright 2026 The rnnt Authors. All Rights Reserved.
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

#include "rnnt/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "rnnt/config.hpp"

namespace rnnt {

namespace {

constexpr char kMagic[8] = {'R', 'N', 'N', 'T', 'C', 'K', 'P', 'T'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u32(std::uint32_t v) { bytes(v, 4); }
  void u64(std::uint64_t v) { bytes(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  void bytes(std::uint64_t v, int n) {
    char buffer[8];
    for (int i = 0; i < n; ++i) buffer[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out_.write(buffer, n);
  }

  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(bytes(4)); }
  std::uint64_t u64() { return bytes(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t size = u32();
    if (size > (1u << 24)) throw InputError("checkpoint: implausible string length");
    std::string s(size, '\0');
    read(s.data(), size);
    return s;
  }
  void read(char* data, std::size_t n) {
    in_.read(data, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw InputError("checkpoint: truncated file");
  }

 private:
  std::uint64_t bytes(int n) {
    unsigned char buffer[8];
    read(reinterpret_cast<char*>(buffer), n);
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(buffer[i]) << (8 * i);
    return v;
  }

  std::istream& in_;
};

template <typename Array>
void write_array(Writer& w, const std::string& name, const Array& a) {
  w.str(name);
  w.u64(static_cast<std::uint64_t>(a.rows()));
  w.u64(static_cast<std::uint64_t>(a.cols()));
  for (Eigen::Index i = 0; i < a.size(); ++i) w.f64(a.data()[i]);
}

template <typename Array>
void read_array(Reader& r, const std::string& name, Array& a) {
  const std::string found = r.str();
  if (found != name) {
    throw InputError("checkpoint: expected array '" + name + "', found '" + found + "'");
  }
  const std::uint64_t rows = r.u64();
  const std::uint64_t cols = r.u64();
  if (rows != static_cast<std::uint64_t>(a.rows()) ||
      cols != static_cast<std::uint64_t>(a.cols())) {
    throw InputError("checkpoint: array '" + name + "' is " + std::to_string(rows) + "x" +
                     std::to_string(cols) + ", expected " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = r.f64();
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& checkpoint) {
  const TrainerState& s = checkpoint.state;
  Writer w(out);
  out.write(kMagic, sizeof(kMagic));
  w.u32(Checkpoint::kVersion);
  w.str(format_train_config(checkpoint.config));
  w.u64(static_cast<std::uint64_t>(s.epoch));
  w.u64(static_cast<std::uint64_t>(s.best_epoch));
  w.u64(static_cast<std::uint64_t>(s.epochs_since_improvement));
  w.f64(s.best_metric);
  w.str(s.rng_state);
  const ModelShape shape = s.model.shape();
  w.u32(shape.alphabet_size);
  w.u32(shape.feature_dim);
  w.u32(shape.prediction_hidden);
  w.u32(shape.transcription_hidden);

  std::uint32_t arrays = 0;
  for_each_parameter([&](const std::string&, const auto&) { ++arrays; }, s.model);
  w.u32(2 * arrays);
  for_each_parameter(
      [&](const std::string& name, const auto& a) { write_array(w, "model/" + name, a); },
      s.model);
  for_each_parameter(
      [&](const std::string& name, const auto& a) { write_array(w, "velocity/" + name, a); },
      s.velocity);
}

Checkpoint read_checkpoint(std::istream& in) {
  Reader r(in);
  char magic[sizeof(kMagic)];
  r.read(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw InputError("checkpoint: not a checkpoint file");
  }
  const std::uint32_t version = r.u32();
  if (version != Checkpoint::kVersion) {
    throw InputError("checkpoint: unsupported version " + std::to_string(version) +
                     " (this build reads version " + std::to_string(Checkpoint::kVersion) + ")");
  }

  Checkpoint checkpoint;
  checkpoint.config = parse_config(r.str(), "<checkpoint config>").train;
  TrainerState& s = checkpoint.state;
  s.epoch = static_cast<int>(r.u64());
  s.best_epoch = static_cast<int>(r.u64());
  s.epochs_since_improvement = static_cast<int>(r.u64());
  s.best_metric = r.f64();
  s.rng_state = r.str();

  ModelShape shape;
  shape.alphabet_size = static_cast<int>(r.u32());
  shape.feature_dim = static_cast<int>(r.u32());
  shape.prediction_hidden = static_cast<int>(r.u32());
  shape.transcription_hidden = static_cast<int>(r.u32());
  if (shape.alphabet_size < 1 || shape.feature_dim < 1 || shape.prediction_hidden < 1 ||
      shape.transcription_hidden < 1 || shape.alphabet_size > (1 << 16) ||
      shape.feature_dim > (1 << 16) || shape.prediction_hidden > (1 << 16) ||
      shape.transcription_hidden > (1 << 16)) {
    throw InputError("checkpoint: implausible model shape");
  }
  s.model = Transducer::zeros(shape);
  s.velocity = Transducer::zeros(shape);

  std::uint32_t arrays = 0;
  for_each_parameter([&](const std::string&, const auto&) { ++arrays; }, s.model);
  if (r.u32() != 2 * arrays) throw InputError("checkpoint: unexpected array count");
  for_each_parameter([&](const std::string& name, auto& a) { read_array(r, "model/" + name, a); },
                     s.model);
  for_each_parameter(
      [&](const std::string& name, auto& a) { read_array(r, "velocity/" + name, a); },
      s.velocity);
  return checkpoint;
}

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write checkpoint '" + path + "'");
  write_checkpoint(out, checkpoint);
  if (!out) throw Error("failed writing checkpoint '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open checkpoint '" + path + "'");
  return read_checkpoint(in);
}

}  // namespace rnnt
