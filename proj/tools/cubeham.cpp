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

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "cubeham/constructors.hpp"
#include "cubeham/extender.hpp"
#include "cubeham/harness.hpp"
#include "cubeham/instances.hpp"
#include "cubeham/io.hpp"
#include "cubeham/oracle.hpp"

namespace {

using namespace cubeham;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNegative = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInput = 4;

struct Common {
  std::string in = "-";
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
};

Json read_input(const std::string& path) {
  if (path != "-") return read_json_file(path);
  try {
    return Json::parse(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("stdin: ") + e.what());
  }
}

void emit(const Common& c, const Json& j) {
  const std::string text = j.dump() + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(c.out, text);
  }
}

// Matching without labels, plus its single forbidden vertex if it names one.
struct Loaded {
  Matching plain;
  std::optional<Vertex> forbidden;
  std::vector<Vertex> forbidden_all;
};

Loaded load(const Common& c) {
  Matching m = matching_from_json(read_input(c.in));
  Loaded out;
  if (!m.vertices_with(kTerminal).empty()) throw InputError("terminals are not accepted here");
  out.forbidden_all = m.vertices_with(kForbidden);
  for (Vertex v : out.forbidden_all) m.set_label(v, kUncovered);
  if (out.forbidden_all.size() == 1) out.forbidden = out.forbidden_all.front();
  out.plain = std::move(m);
  return out;
}

Vertex checked_vertex(long long v, const Matching& m, const char* what) {
  if (v < 0 || v >= static_cast<long long>(m.size())) {
    throw InputError(std::string(what) + " out of range");
  }
  return static_cast<Vertex>(v);
}

ExtendOptions options(const Common& c) {
  ExtendOptions o;
  o.oracle.node_budget = c.budget;
  o.oracle.seed = c.seed;
  return o;
}

void add_common(CLI::App* app, Common& c, bool with_in = true) {
  if (with_in) app->add_option("--in", c.in, "input JSON file ('-' for stdin)");
  app->add_option("--out", c.out, "output file (default stdout)");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--budget", c.budget, "search node budget")->check(CLI::PositiveNumber);
}

int cmd_extend(const Common& c, std::optional<long long> avoid, const std::string& mode,
               const std::string& trace_path, const std::string& dot_path) {
  const Loaded in = load(c);
  std::optional<Vertex> z;
  if (avoid) z = checked_vertex(*avoid, in.plain, "--avoid");
  if (!z && in.forbidden) z = in.forbidden;
  if (!z && !in.forbidden_all.empty()) throw InputError("at most one forbidden vertex is supported");
  CaseTrace trace;
  std::optional<CycleCertificate> cert;
  if (z) {
    if (!mode.empty()) throw InputError("--long cannot be combined with an avoided vertex");
    AvoidResult r = extend_avoiding(in.plain, *z, options(c));
    trace = r.trace;
    if (r.violation) {
      Json j = hreport_to_json(HReport{false, {*r.violation}});
      j["result"] = "h_violated";
      emit(c, j);
      return kExitNegative;
    }
    cert = std::move(r.certificate);
  } else if (mode == "qd") {
    cert = long_cycle_qd(in.plain, &trace, options(c));
  } else if (mode == "kqd") {
    cert = long_cycle_kqd(in.plain, &trace, options(c));
  } else {
    cert = extend_to_cycle(in.plain, &trace, options(c));
  }
  if (!trace_path.empty()) write_text_file(trace_path, trace_to_json(trace).dump(2) + "\n");
  if (!dot_path.empty()) write_text_file(dot_path, cycle_to_dot(*cert));
  emit(c, cycle_to_json(in.plain.dim(), cert->vertices));
  return kExitOk;
}

int cmd_oracle(const Common& c, std::optional<long long> avoid) {
  Matching m = matching_from_json(read_input(c.in));
  if (avoid) m.set_label(checked_vertex(*avoid, m, "--avoid"), kForbidden);
  if (m.terminal_count() % 2 != 0) throw InputError("odd number of terminals");
  SearchConfig cfg;
  cfg.node_budget = c.budget;
  cfg.seed = c.seed;
  const SearchResult r = extends(m, cfg);
  Json j{{"result", r.outcome == SearchOutcome::kYes ? "yes" : r.outcome == SearchOutcome::kNo ? "no" : "budget"},
         {"nodes", r.nodes}};
  if (r.outcome == SearchOutcome::kYes) {
    if (m.terminal_count() == 0) {
      j["cycle"] = r.cycle;
    } else {
      j["paths"] = r.paths;
    }
  }
  emit(c, j);
  return r.outcome == SearchOutcome::kBudget ? kExitBudget : kExitOk;
}

int cmd_check_h(const Common& c, long long zz) {
  const Loaded in = load(c);
  const Vertex z = checked_vertex(zz, in.plain, "--z");
  if (in.plain.covered(z)) throw InputError("z is covered by the matching");
  const HReport r = check_property_h(in.plain, z);
  emit(c, hreport_to_json(r));
  return r.satisfied ? kExitOk : kExitNegative;
}

int cmd_layers(const Common& c, std::optional<long long> dangerous) {
  const Loaded in = load(c);
  std::optional<Vertex> x;
  if (dangerous) x = checked_vertex(*dangerous, in.plain, "--dangerous");
  Json out = Json::array();
  const auto patterns = x ? danger_report(in.plain, *x).patterns : find_layers(in.plain);
  for (const auto& p : patterns) out.push_back(layer_pattern_to_json(p));
  emit(c, out);
  return kExitOk;
}

int cmd_maximalize(const Common& c, bool any) {
  const Loaded in = load(c);
  Matching out = extend_to_maximal(in.plain, in.forbidden_all, any ? EdgeMode::kAny : EdgeMode::kCube);
  for (Vertex v : in.forbidden_all) out.set_label(v, kForbidden);
  emit(c, matching_to_json(out));
  return kExitOk;
}

int cmd_shorten(const Common& c) {
  const Loaded in = load(c);
  if (!in.forbidden_all.empty()) throw InputError("forbidden vertices are not accepted here");
  emit(c, matching_to_json(shorten_matching(in.plain)));
  return kExitOk;
}

int cmd_hamlace(const Common& c, long long xx, long long yy, bool path, const std::string& dot_path) {
  const Loaded in = load(c);
  const Vertex x = checked_vertex(xx, in.plain, "--x");
  const Vertex y = checked_vertex(yy, in.plain, "--y");
  const HamlaceResult r =
      path ? hamlace_path(in.plain, x, y, options(c)) : hamlace_cycle(in.plain, x, y, options(c));
  if (r.half_layer) {
    emit(c, Json{{"result", "half_layer"}, {"layer", layer_id_to_json(*r.half_layer)}});
    return kExitNegative;
  }
  if (path) {
    if (!dot_path.empty()) write_text_file(dot_path, paths_to_dot(*r.path));
    emit(c, paths_to_json(in.plain.dim(), *r.path));
  } else {
    if (!dot_path.empty()) write_text_file(dot_path, cycle_to_dot(*r.cycle));
    emit(c, cycle_to_json(in.plain.dim(), r.cycle->vertices));
  }
  return kExitOk;
}

int cmd_gen(const Common& c, const std::string& kind_name, int d) {
  const auto kind = parse_instance_kind(kind_name);
  if (!kind) throw InputError("unknown instance kind: " + kind_name);
  Instance inst;
  try {
    inst = gen_instance(*kind, d, c.seed);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Json j = matching_to_json(inst.matching);
  if (inst.avoid) j["z"] = *inst.avoid;
  if (inst.x) j["x"] = *inst.x;
  if (inst.y) j["y"] = *inst.y;
  emit(c, j);
  return kExitOk;
}

int cmd_suite(const Common& c, const std::string& name, double scale, const std::string& json_path,
              bool timing, bool serial) {
  SuiteConfig cfg;
  cfg.seed = c.seed;
  cfg.budget = c.budget;
  cfg.scale = scale;
  cfg.exec = serial ? Exec::kSerial : Exec::kParallel;
  HarnessReport r;
  try {
    r = run_suite(name, cfg);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::cout << report_summary(r);
  const std::string text = report_to_json(r, timing).dump(2) + "\n";
  if (!json_path.empty()) write_text_file(json_path, text);
  if (!c.out.empty()) write_text_file(c.out, text);
  if (!r.green()) return kExitFailure;
  return r.budget_exhausted > 0 ? kExitBudget : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubeham: extend matchings of hypercubes to cycles"};
  app.require_subcommand(1);

  Common common;
  std::optional<long long> avoid;
  std::string long_mode;
  std::string trace_path;
  std::string dot_path;
  long long z = 0;
  std::optional<long long> dangerous;
  bool any_edges = false;
  long long x = -1;
  long long y = -1;
  bool path = false;
  bool cycle = false;
  std::string kind;
  int d = 0;
  std::string suite;
  double scale = 1.0;
  std::string json_path;
  bool timing = false;
  bool serial = false;

  auto* extend = app.add_subcommand("extend", "extend a matching to a cycle");
  add_common(extend, common);
  extend->add_option("--avoid", avoid, "vertex the cycle must avoid");
  extend->add_option("--long", long_mode, "length-guaranteed mode")->check(CLI::IsMember({"qd", "kqd"}));
  extend->add_option("--trace", trace_path, "write the case trace as JSON");
  extend->add_option("--dot", dot_path, "write the cycle as a DOT graph");

  auto* oracle = app.add_subcommand("oracle", "decide extendability by exhaustive search");
  add_common(oracle, common);
  oracle->add_option("--avoid", avoid, "vertex the cycle must avoid");

  auto* check_h = app.add_subcommand("check-h", "check property (H) for an avoided vertex");
  add_common(check_h, common);
  check_h->add_option("--z", z, "avoided vertex")->required();

  auto* layers = app.add_subcommand("layers", "list (near) half-layers and quad-layers");
  add_common(layers, common);
  layers->add_option("--dangerous", dangerous, "report only patterns dangerous for this vertex");

  auto* maximalize = app.add_subcommand("maximalize", "extend to a maximal matching");
  add_common(maximalize, common);
  maximalize->add_flag("--any", any_edges, "allow long edges");

  auto* shorten = app.add_subcommand("shorten", "replace long edges by cube edges");
  add_common(shorten, common);

  auto* hamlace = app.add_subcommand("hamlace", "laceability: cycle avoiding x, y or path from x to y");
  add_common(hamlace, common);
  hamlace->add_option("--x", x, "first end")->required();
  hamlace->add_option("--y", y, "second end")->required();
  auto* path_flag = hamlace->add_flag("--path", path, "Hamilton path from x to y (perfect input)");
  hamlace->add_flag("--cycle", cycle, "cycle avoiding x and y (default)")->excludes(path_flag);
  hamlace->add_option("--dot", dot_path, "write the result as a DOT graph");

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  add_common(gen, common, false);
  gen->add_option("--kind", kind, "instance family")->required();
  gen->add_option("--d", d, "dimension")->required();

  auto* suite_cmd = app.add_subcommand("suite", "run a verification suite");
  add_common(suite_cmd, common, false);
  suite_cmd->add_option("--name", suite, "suite name")->required();
  suite_cmd->add_option("--scale", scale, "multiplier for sampled instance counts")
      ->check(CLI::PositiveNumber);
  suite_cmd->add_option("--json", json_path, "write the report JSON here");
  suite_cmd->add_flag("--timing", timing, "include wall-clock fields in the JSON");
  suite_cmd->add_flag("--serial", serial, "run on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*extend) return cmd_extend(common, avoid, long_mode, trace_path, dot_path);
    if (*oracle) return cmd_oracle(common, avoid);
    if (*check_h) return cmd_check_h(common, z);
    if (*layers) return cmd_layers(common, dangerous);
    if (*maximalize) return cmd_maximalize(common, any_edges);
    if (*shorten) return cmd_shorten(common);
    if (*hamlace) return cmd_hamlace(common, x, y, path, dot_path);
    if (*gen) return cmd_gen(common, kind, d);
    if (*suite_cmd) return cmd_suite(common, suite, scale, json_path, timing, serial);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ConstructionError& e) {
    std::cerr << "construction failed: " << e.what() << "\n" << trace_to_json(e.trace()).dump(2) << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
