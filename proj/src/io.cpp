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

#include "cubeham/io.hpp"

#include <fstream>
#include <sstream>

namespace cubeham {

namespace {

int read_dimension(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j["d"].is_number_integer()) {
    throw InputError("expected an object with integer field \"d\"");
  }
  const auto d = j["d"].get<long long>();
  if (d < 1 || d > kMaxDimension) throw InputError("dimension out of range: " + std::to_string(d));
  return static_cast<int>(d);
}

Vertex read_vertex(const Json& v, int d) {
  if (!v.is_number_integer()) throw InputError("vertex must be an integer");
  const auto x = v.get<long long>();
  if (x < 0 || x >= static_cast<long long>(vertex_count(d))) {
    throw InputError("vertex out of range: " + std::to_string(x));
  }
  return static_cast<Vertex>(x);
}

std::vector<Vertex> read_vertex_list(const Json& j, const char* key, int d) {
  std::vector<Vertex> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw InputError(std::string("\"") + key + "\" must be an array");
  for (const Json& v : j[key]) out.push_back(read_vertex(v, d));
  return out;
}

Json vertex_list(const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(v);
  return out;
}

std::string bits(Vertex v, int d) {
  std::string s(static_cast<std::size_t>(d), '0');
  for (int i = 1; i <= d; ++i) {
    if (has_direction(v, i)) s[static_cast<std::size_t>(d - i)] = '1';
  }
  return s;
}

void dot_body(std::ostringstream& out, const std::vector<std::vector<Vertex>>& seqs, bool closed,
              const Matching& m) {
  const int d = m.dim();
  for (const auto& seq : seqs) {
    for (Vertex v : seq) out << "  " << v << " [label=\"" << bits(v, d) << "\"];\n";
  }
  for (const auto& seq : seqs) {
    const std::size_t k = seq.size();
    const std::size_t pairs = closed ? k : k - 1;
    for (std::size_t p = 0; p < pairs; ++p) {
      const Vertex a = seq[p];
      const Vertex b = seq[(p + 1) % k];
      out << "  " << a << " -- " << b;
      if (m.has_edge(a, b)) {
        out << " [color=red, penwidth=2" << (distance(a, b) > 1 ? ", style=dashed" : "") << "]";
      }
      out << ";\n";
    }
  }
}

}  // namespace

Json matching_to_json(const Matching& m) {
  Json edges = Json::array();
  for (const Edge& e : m.edges()) edges.push_back(Json::array({e.u, e.v}));
  return Json{{"d", m.dim()},
              {"edges", std::move(edges)},
              {"forbidden", vertex_list(m.vertices_with(kForbidden))},
              {"terminals", vertex_list(m.vertices_with(kTerminal))}};
}

Matching matching_from_json(const Json& j) {
  const int d = read_dimension(j);
  Matching m(d);
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw InputError("\"edges\" must be an array");
    for (const Json& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw InputError("edge must be a pair [u, v]");
      const Vertex u = read_vertex(e[0], d);
      const Vertex v = read_vertex(e[1], d);
      if (u == v) throw InputError("edge with equal endpoints");
      if (m.covered(u) || m.covered(v)) throw InputError("edges share a vertex");
      m.add_edge(u, v);
    }
  }
  for (const char* key : {"forbidden", "terminals"}) {
    const Slot label = std::string(key) == "forbidden" ? kForbidden : kTerminal;
    for (Vertex v : read_vertex_list(j, key, d)) {
      if (m.slot(v) != kUncovered) throw InputError("labelled vertex is covered or labelled twice");
      m.set_label(v, label);
    }
  }
  return m;
}

Json cycle_to_json(int d, const std::vector<Vertex>& cycle) {
  return Json{{"d", d}, {"cycle", vertex_list(cycle)}};
}

std::vector<Vertex> cycle_from_json(const Json& j, int d) {
  if (read_dimension(j) != d) throw InputError("cycle dimension mismatch");
  if (!j.contains("cycle")) throw InputError("missing \"cycle\"");
  return read_vertex_list(j, "cycle", d);
}

Json paths_to_json(int d, const LinearForestCertificate& c) {
  Json paths = Json::array();
  for (const auto& p : c.paths) paths.push_back(vertex_list(p));
  return Json{{"d", d}, {"paths", std::move(paths)}, {"terminals", vertex_list(c.terminals)}};
}

Json trace_to_json(const CaseTrace& t) {
  Json levels = Json::array();
  for (const TraceLevel& lv : t.levels) {
    Json o{{"step", lv.step}, {"dim", lv.dim}};
    if (lv.direction) o["direction"] = lv.direction;
    if (lv.rule) o["rule"] = lv.rule;
    if (lv.parity_case) o["parity_case"] = lv.parity_case;
    if (!lv.u_case.empty()) o["u_case"] = lv.u_case;
    if (!lv.p0_case.empty()) o["p0_case"] = lv.p0_case;
    if (lv.u) o["u"] = *lv.u;
    if (!lv.surgery.empty()) o["surgery"] = lv.surgery;
    if (lv.cut) o["cut"] = lv.cut;
    if (lv.surgery_cut >= 0) o["surgery_cut"] = lv.surgery_cut;
    if (lv.dangerous_directions >= 0) o["dangerous_directions"] = lv.dangerous_directions;
    levels.push_back(std::move(o));
  }
  Json tags = Json::array();
  for (const auto& tag : t.tags()) tags.push_back(tag);
  return Json{{"levels", std::move(levels)}, {"tags", std::move(tags)}};
}

CaseTrace trace_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array()) {
    throw InputError("trace must hold a \"levels\" array");
  }
  CaseTrace t;
  try {
    for (const Json& o : j["levels"]) {
      TraceLevel lv;
      lv.step = o.at("step").get<std::string>();
      lv.dim = o.at("dim").get<int>();
      lv.direction = o.value("direction", 0);
      lv.rule = o.value("rule", 0);
      lv.parity_case = o.value("parity_case", 0);
      lv.u_case = o.value("u_case", std::string());
      lv.p0_case = o.value("p0_case", std::string());
      if (o.contains("u")) lv.u = o["u"].get<Vertex>();
      lv.surgery = o.value("surgery", std::string());
      lv.cut = o.value("cut", 0);
      lv.surgery_cut = o.value("surgery_cut", -1);
      lv.dangerous_directions = o.value("dangerous_directions", -1);
      t.levels.push_back(std::move(lv));
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed trace: ") + e.what());
  }
  return t;
}

Json layer_id_to_json(const LayerId& id) {
  Json o{{"direction", id.direction}, {"parity", id.parity}};
  if (id.side) o["side"] = Json{{"direction", id.side->direction}, {"bit", id.side->bit}};
  return o;
}

Json layer_pattern_to_json(const LayerPattern& p) {
  Json missing = Json::array();
  for (const Edge& e : p.missing) missing.push_back(Json::array({e.u, e.v}));
  return Json{{"kind", layer_kind_name(p.kind)},
              {"layer", layer_id_to_json(p.id)},
              {"missing", std::move(missing)},
              {"extension_vertices", vertex_list(p.extension_vertices)},
              {"covered", p.covered},
              {"dangerous", p.dangerous}};
}

Json hreport_to_json(const HReport& r) {
  Json ws = Json::array();
  for (const HWitness& w : r.witnesses) {
    ws.push_back(Json{{"direction", w.direction},
                      {"layer", layer_id_to_json(w.layer)},
                      {"side_bit", w.side_bit},
                      {"side_covered", w.side_covered}});
  }
  return Json{{"satisfied", r.satisfied}, {"witnesses", std::move(ws)}};
}

Json violation_to_json(const Violation& v) {
  return Json{{"clause", clause_name(v.clause)}, {"index", v.index}, {"detail", v.detail}};
}

std::string cycle_to_dot(const CycleCertificate& c) {
  std::ostringstream out;
  out << "graph cycle {\n  node [shape=circle, fontsize=10];\n";
  dot_body(out, {c.vertices}, true, c.matching);
  out << "}\n";
  return out.str();
}

std::string paths_to_dot(const LinearForestCertificate& c) {
  std::ostringstream out;
  out << "graph paths {\n  node [shape=circle, fontsize=10];\n";
  dot_body(out, c.paths, false, c.matching);
  out << "}\n";
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace cubeham
