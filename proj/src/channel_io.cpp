// Copyright 2026 The cohdisc Authors
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

#include "cohdisc/channel_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cohdisc/errors.hpp"

namespace cohdisc::io {

namespace {

using nlohmann::json;

int positive_int(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidInput(std::string("channel spec is missing \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > static_cast<long long>(linalg::kMaxDim)) {
    throw DimensionMismatch(std::string("channel spec field \"") + key + "\" must be a positive integer");
  }
  return v.get<int>();
}

double parse_real(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInput("cannot parse " + std::string(what) + " from \"" + std::string(text) + "\"");
  }
  return value;
}

}  // namespace

ChannelSpec parse_channel_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("channel spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("channel spec must be a JSON object");
  const int din = positive_int(doc, "dim_in");
  const int dout = positive_int(doc, "dim_out");
  if (!doc.contains("kraus") || !doc.at("kraus").is_array() || doc.at("kraus").empty()) {
    throw InvalidInput("channel spec needs a non-empty \"kraus\" array");
  }

  std::vector<ComplexMatrix> ops;
  for (const json& op : doc.at("kraus")) {
    if (!op.is_array() || static_cast<int>(op.size()) != dout) {
      throw DimensionMismatch("each Kraus operator needs dim_out rows");
    }
    ComplexMatrix k(dout, din);
    for (int r = 0; r < dout; ++r) {
      const json& row = op[r];
      if (!row.is_array() || static_cast<int>(row.size()) != din) {
        throw DimensionMismatch("each Kraus operator row needs dim_in entries");
      }
      for (int c = 0; c < din; ++c) {
        const json& entry = row[c];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
          throw InvalidInput("Kraus entries must be [re, im] number pairs");
        }
        k(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      }
    }
    ops.push_back(std::move(k));
  }

  ChannelSpec spec{doc.value("name", std::string()), channels::KrausChannel(din, dout, std::move(ops))};
  channels::validate_channel(spec.channel);
  return spec;
}

std::string serialize_channel_spec(const channels::KrausChannel& channel, const std::string& name) {
  json doc;
  doc["dim_in"] = channel.dim_in();
  doc["dim_out"] = channel.dim_out();
  if (!name.empty()) doc["name"] = name;
  json ops = json::array();
  for (const auto& k : channel.kraus()) {
    json op = json::array();
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < k.cols(); ++c) row.push_back({k(r, c).real(), k(r, c).imag()});
      op.push_back(std::move(row));
    }
    ops.push_back(std::move(op));
  }
  doc["kraus"] = std::move(ops);
  return doc.dump() + "\n";
}

std::optional<channels::KrausChannel> builtin_channel(std::string_view name) {
  if (name == "id") return channels::identity_channel(2);
  if (name == "xflip") {
    ComplexMatrix x = ComplexMatrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    return channels::unitary_channel(x);
  }
  if (name.substr(0, 4) == "gad:") {
    const std::string_view rest = name.substr(4);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidInput("built-in GAD channel must be written gad:<gamma>:<N>");
    }
    const double gamma = parse_real(rest.substr(0, colon), "GAD damping");
    const double noise = parse_real(rest.substr(colon + 1), "GAD noise");
    return channels::gad_channel({gamma, noise});
  }
  return std::nullopt;
}

ChannelSpec load_channel(const std::string& name_or_path) {
  if (auto builtin = builtin_channel(name_or_path)) return {name_or_path, std::move(*builtin)};
  std::ifstream in(name_or_path);
  if (!in) throw InvalidInput("cannot open channel file " + name_or_path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    ChannelSpec spec = parse_channel_spec(text.str());
    if (spec.name.empty()) spec.name = name_or_path;
    return spec;
  } catch (const CompletenessViolation& e) {
    throw CompletenessViolation(name_or_path + ": " + e.what(), e.deviation());
  }
}

}  // namespace cohdisc::io
