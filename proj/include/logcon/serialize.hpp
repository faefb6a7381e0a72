// Copyright 2026 The logcon Authors
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

#include <json.hpp>

#include "logcon/channels.hpp"
#include "logcon/concepts.hpp"
#include "logcon/geometry.hpp"
#include "logcon/measures.hpp"

namespace logcon {

using Json = nlohmann::json;

/// Raised for documents that do not describe a valid value, and for values
/// holding opaque functions (density states and kernels).
class SerializationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json to_json(const Vec& v);
Json to_json(const Mat& m);
Json to_json(const ConvexSet& s);
Json to_json(const Space& s);
Json to_json(const Concept& c);
Json to_json(const State& s);
Json to_json(const Channel& f);
Json to_json(const Estimate& e);

Vec vec_from_json(const Json& j);
Mat mat_from_json(const Json& j);
ConvexSet convex_set_from_json(const Json& j);
Space space_from_json(const Json& j);
Concept concept_from_json(const Json& j);
State state_from_json(const Json& j);
Channel channel_from_json(const Json& j);

}  // namespace logcon
