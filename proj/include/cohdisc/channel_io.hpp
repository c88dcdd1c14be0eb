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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cohdisc/channels.hpp"

// ChannelSpec JSON:
//
//   {"dim_in": 2, "dim_out": 2, "name": "optional",
//    "kraus": [ [ [[re, im], ...], ... ], ... ]}
//
// kraus is indexed operator, row, column; each entry is a [re, im] pair.
namespace cohdisc::io {

struct ChannelSpec {
  std::string name;
  channels::KrausChannel channel;
};

/// Throws InvalidInput (or a subclass naming the failed check) on malformed
/// JSON, wrong shapes, non-finite entries or a non trace-preserving set.
ChannelSpec parse_channel_spec(std::string_view json_text);

/// Entries are written with round-trip precision.
std::string serialize_channel_spec(const channels::KrausChannel& channel, const std::string& name = "");

/// `id`, `xflip` and `gad:<gamma>:<N>`; nullopt for anything else.
std::optional<channels::KrausChannel> builtin_channel(std::string_view name);

/// A built-in name, or else a path to a ChannelSpec file.
ChannelSpec load_channel(const std::string& name_or_path);

}  // namespace cohdisc::io
