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

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubeham/certificate.hpp"
#include "cubeham/extender.hpp"
#include "cubeham/layers.hpp"
#include "cubeham/property_h.hpp"

namespace cubeham {

using Json = nlohmann::json;

// Malformed user input: bad JSON, wrong schema, out-of-range vertices.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"d": int, "edges": [[u,v],...], "forbidden": [...], "terminals": [...]}
Json matching_to_json(const Matching& m);
Matching matching_from_json(const Json& j);

// {"d": int, "cycle": [v0, ...]}
Json cycle_to_json(int d, const std::vector<Vertex>& cycle);
std::vector<Vertex> cycle_from_json(const Json& j, int d);

// {"d": int, "paths": [[...],...], "terminals": [...]}
Json paths_to_json(int d, const LinearForestCertificate& c);

Json trace_to_json(const CaseTrace& t);
CaseTrace trace_from_json(const Json& j);

Json layer_id_to_json(const LayerId& id);
Json layer_pattern_to_json(const LayerPattern& p);
Json hreport_to_json(const HReport& r);
Json violation_to_json(const Violation& v);

// Undirected DOT graph of the certificate; matching edges drawn bold red,
// long ones dashed.
std::string cycle_to_dot(const CycleCertificate& c);
std::string paths_to_dot(const LinearForestCertificate& c);

// Throws InputError when the file is missing or does not parse.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cubeham
