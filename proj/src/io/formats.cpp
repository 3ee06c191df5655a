// Copyright 2026 The qfno Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfno/io/formats.hpp"

#include <nlohmann/json.hpp>

#include "qfno/error.hpp"
#include "qfno/io/binary.hpp"

namespace qfno::io {

namespace {

using nlohmann::json;

json grid_json(const evolve::TimeGrid& g) { return json{{"t0", g.t0}, {"dt", g.dt}, {"m", g.m}}; }

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw IoError(IoErrorCode::kBadMetadata, std::string("metadata is missing '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(IoErrorCode::kBadMetadata, std::string("metadata field '") + key + "': " + e.what());
  }
}

evolve::TimeGrid grid_from(const json& j) {
  return evolve::TimeGrid{field<double>(j, "t0"), field<double>(j, "dt"), field<std::size_t>(j, "m")};
}

json dataset_json(const evolve::Dataset& d) {
  const auto& s = d.spec;
  json j;
  j["spec"] = json{{"model", spin::model_name(s.model)}, {"qubits", s.qubits}, {"seed", s.seed},
                   {"couplings", json{{"jx", s.jx}, {"jy", s.jy}, {"jz", s.jz}, {"h", s.h}}}};
  j["arch"] = arch_name(d.arch);
  j["input_type"] = input_type_name(d.options.input_type);
  j["options"] = json{{"count", d.options.count},         {"intervals", d.options.intervals},
                      {"fraction", d.options.fraction},   {"period", d.options.period},
                      {"dt", d.options.dt},               {"first_sample", d.options.first_sample}};
  j["input_grid"] = grid_json(d.input_grid);
  j["target_grid"] = grid_json(d.target_grid);
  j["samples"] = d.size();
  j["channels"] = d.channels;
  j["input_shape"] = d.inputs.shape();
  j["target_shape"] = d.targets.shape();
  j["payload_bytes"] = 16 * (d.inputs.size() + d.targets.size());
  return j;
}

void check_magic(ByteReader& r, const char* magic, const char* what) {
  if (r.remaining() < 4 || r.bytes(4) != std::string_view(magic, 4)) {
    throw IoError(IoErrorCode::kBadMagic, std::string(what) + ": bad magic");
  }
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw IoError(IoErrorCode::kVersionMismatch,
                  std::string(what) + ": unsupported version " + std::to_string(version));
  }
}

json read_header(ByteReader& r, const char* what) {
  const std::uint64_t len = r.u64();
  if (len > r.remaining()) throw IoError(IoErrorCode::kTruncated, std::string(what) + ": header is truncated");
  const std::string_view text = r.bytes(static_cast<std::size_t>(len));
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(IoErrorCode::kBadMetadata, std::string(what) + ": metadata is not valid JSON: " + e.what());
  }
}

void write_header(ByteWriter& w, const char* magic, const json& j) {
  w.bytes(std::string_view(magic, 4));
  w.u32(kFormatVersion);
  const std::string text = j.dump();
  w.u64(text.size());
  w.bytes(text);
}

json config_to(const fno::FnoConfig& c) {
  return json{{"arch", arch_name(c.arch)}, {"in_channels", c.in_channels}, {"out_channels", c.out_channels},
              {"width", c.width},          {"blocks", c.blocks},           {"modes", c.modes},
              {"qubits", c.qubits},        {"activation", "split_gelu"}};
}

fno::FnoConfig config_from(const json& j) {
  fno::FnoConfig c;
  try {
    c.arch = parse_arch(field<std::string>(j, "arch"));
  } catch (const ValidationError& e) {
    throw IoError(IoErrorCode::kBadMetadata, e.what());
  }
  c.in_channels = field<std::size_t>(j, "in_channels");
  c.out_channels = field<std::size_t>(j, "out_channels");
  c.width = field<std::size_t>(j, "width");
  c.blocks = field<std::size_t>(j, "blocks");
  c.modes = field<std::size_t>(j, "modes");
  c.qubits = field<std::size_t>(j, "qubits");
  if (field<std::string>(j, "activation") != "split_gelu") {
    throw IoError(IoErrorCode::kBadMetadata, "checkpoint: unknown activation");
  }
  try {
    c.validate();
  } catch (const ValidationError& e) {
    throw IoError(IoErrorCode::kBadMetadata, std::string("checkpoint: ") + e.what());
  }
  return c;
}

}  // namespace

std::string dataset_metadata_json(const evolve::Dataset& data) { return dataset_json(data).dump(); }
std::string config_json(const fno::FnoConfig& config) { return config_to(config).dump(); }

std::string encode_dataset(const evolve::Dataset& data) {
  data.validate();
  ByteWriter w;
  write_header(w, kDatasetMagic, dataset_json(data));
  w.complexes(data.inputs);
  w.complexes(data.targets);
  return w.take();
}

evolve::Dataset decode_dataset(const std::string& bytes) {
  ByteReader r(bytes);
  check_magic(r, kDatasetMagic, "dataset");
  const json j = read_header(r, "dataset");

  evolve::Dataset d;
  const json& spec = j.contains("spec") ? j["spec"] : json();
  const json& couplings = spec.contains("couplings") ? spec["couplings"] : json();
  const json& options = j.contains("options") ? j["options"] : json();
  try {
    d.spec.model = spin::parse_model(field<std::string>(spec, "model"));
    d.arch = parse_arch(field<std::string>(j, "arch"));
    d.options.input_type = parse_input_type(field<std::string>(j, "input_type"));
  } catch (const ValidationError& e) {
    throw IoError(IoErrorCode::kBadMetadata, std::string("dataset: ") + e.what());
  }
  d.spec.qubits = field<std::size_t>(spec, "qubits");
  d.spec.seed = field<std::uint64_t>(spec, "seed");
  d.spec.jx = field<double>(couplings, "jx");
  d.spec.jy = field<double>(couplings, "jy");
  d.spec.jz = field<double>(couplings, "jz");
  d.spec.h = field<double>(couplings, "h");
  d.options.count = field<std::size_t>(options, "count");
  d.options.intervals = field<std::size_t>(options, "intervals");
  d.options.fraction = field<double>(options, "fraction");
  d.options.period = field<double>(options, "period");
  d.options.dt = field<double>(options, "dt");
  d.options.first_sample = field<std::uint64_t>(options, "first_sample");
  d.input_grid = grid_from(j.contains("input_grid") ? j["input_grid"] : json());
  d.target_grid = grid_from(j.contains("target_grid") ? j["target_grid"] : json());
  d.channels = field<std::size_t>(j, "channels");
  const Shape in_shape = field<Shape>(j, "input_shape");
  const Shape out_shape = field<Shape>(j, "target_shape");
  const std::size_t samples = field<std::size_t>(j, "samples");
  const std::uint64_t payload = field<std::uint64_t>(j, "payload_bytes");
  if (in_shape.empty() || out_shape.empty() || in_shape[0] != samples || out_shape[0] != samples) {
    throw IoError(IoErrorCode::kShapeMismatch, "dataset: declared shapes disagree with the sample count");
  }
  for (std::size_t x : in_shape)
    if (x == 0) throw IoError(IoErrorCode::kShapeMismatch, "dataset: zero-sized axis");
  for (std::size_t x : out_shape)
    if (x == 0) throw IoError(IoErrorCode::kShapeMismatch, "dataset: zero-sized axis");
  if (payload != 16 * (shape_size(in_shape) + shape_size(out_shape))) {
    throw IoError(IoErrorCode::kShapeMismatch, "dataset: payload size disagrees with the declared shapes");
  }
  if (r.remaining() < payload) throw IoError(IoErrorCode::kTruncated, "dataset: payload is truncated");
  if (r.remaining() > payload) throw IoError(IoErrorCode::kTrailingData, "dataset: bytes after the payload");
  d.inputs = ComplexTensor(in_shape);
  d.targets = ComplexTensor(out_shape);
  r.complexes(d.inputs);
  r.complexes(d.targets);
  try {
    d.validate();
  } catch (const ValidationError& e) {
    throw IoError(IoErrorCode::kShapeMismatch, std::string("dataset: ") + e.what());
  }
  return d;
}

void save_dataset(const std::string& path, const evolve::Dataset& data) { write_file(path, encode_dataset(data)); }
evolve::Dataset load_dataset(const std::string& path) { return decode_dataset(read_file(path)); }

std::string encode_checkpoint(const fno::FnoModel& model) {
  ByteWriter w;
  write_header(w, kCheckpointMagic, config_to(model.config()));
  const auto params = model.parameters();
  w.u32(static_cast<std::uint32_t>(params.size()));
  for (const autodiff::Param* p : params) {
    w.u32(static_cast<std::uint32_t>(p->name.size()));
    w.bytes(p->name);
    w.u32(static_cast<std::uint32_t>(p->value.rank()));
    for (std::size_t d : p->value.shape()) w.u64(d);
    w.complexes(p->value);
  }
  return w.take();
}

fno::FnoModel decode_checkpoint(const std::string& bytes) {
  ByteReader r(bytes);
  check_magic(r, kCheckpointMagic, "checkpoint");
  fno::FnoModel model(config_from(read_header(r, "checkpoint")));
  auto params = model.parameters();
  const std::uint32_t count = r.u32();
  if (count != params.size()) {
    throw IoError(IoErrorCode::kShapeMismatch, "checkpoint: expected " + std::to_string(params.size()) +
                                                   " parameter blobs, found " + std::to_string(count));
  }
  for (autodiff::Param* p : params) {
    const std::uint32_t name_len = r.u32();
    const std::string name(r.bytes(name_len));
    if (name != p->name) {
      throw IoError(IoErrorCode::kShapeMismatch, "checkpoint: expected blob '" + p->name + "', found '" + name + "'");
    }
    const std::uint32_t rank = r.u32();
    Shape shape(rank);
    for (auto& d : shape) d = static_cast<std::size_t>(r.u64());
    if (shape != p->value.shape()) {
      throw IoError(IoErrorCode::kShapeMismatch, "checkpoint: blob '" + name + "' has shape " +
                                                     shape_to_string(shape) + ", config implies " +
                                                     shape_to_string(p->value.shape()));
    }
    r.complexes(p->value);
  }
  if (r.remaining() != 0) throw IoError(IoErrorCode::kTrailingData, "checkpoint: bytes after the last blob");
  return model;
}

void save_checkpoint(const std::string& path, const fno::FnoModel& model) {
  write_file(path, encode_checkpoint(model));
}
fno::FnoModel load_checkpoint(const std::string& path) { return decode_checkpoint(read_file(path)); }

}  // namespace qfno::io
