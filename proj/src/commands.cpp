#include "tamlab/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <optional>

#include "tamlab/engine.hpp"
#include "tamlab/errors.hpp"
#include "tamlab/io.hpp"
#include "tamlab/paths.hpp"
#include "tamlab/periodic.hpp"
#include "tamlab/render.hpp"

namespace tamlab {

using json = nlohmann::json;

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Thrown for outcomes that map to a specific exit code with a message on stderr.
struct Failure {
  int code;
  std::string message;
};

json vec_json(Vec2 p) { return json::array({p.x, p.y}); }

json window_json(const Window& w) { return json::array({w.x_min, w.y_min, w.x_max, w.y_max}); }

Window window_from(const std::vector<Coord>& v, int usage_code) {
  try {
    return Window::make(v.at(0), v.at(1), v.at(2), v.at(3));
  } catch (const std::exception& e) {
    throw Failure{usage_code, std::string("bad window: ") + e.what()};
  }
}

json placement_json(const TileSet& tiles, const Placement& p) {
  return json::array({p.pos.x, p.pos.y, tiles.at(p.tile).name});
}

json path_json(const TileSet& tiles, const std::vector<Placement>& path) {
  json out = json::array();
  for (const auto& p : path) out.push_back(placement_json(tiles, p));
  return out;
}

json part_json(const SdpSet& s) { return json::array({vec_json(s.base), vec_json(s.u), vec_json(s.v)}); }

json union_json(const SdpUnion& u) {
  json out = json::array();
  for (const auto& s : u.parts) out.push_back(part_json(s));
  return out;
}

json report(const std::string& command, json inputs, json parameters, json outcome) {
  return json{{"version", kReportVersion},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"parameters", std::move(parameters)},
              {"outcome", std::move(outcome)}};
}

json file_input(const std::string& path, const std::string& bytes) {
  return json{{"path", path}, {"fnv1a64", fnv1a64_hex(bytes)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Loads a TAS file; any failure maps to `code`.
struct LoadedSystem {
  std::string bytes;
  TasDocument doc;
  std::optional<TileAssemblySystem> system;
};

LoadedSystem load_system(const std::string& path, int code) {
  LoadedSystem out;
  try {
    out.bytes = read_file(path);
    out.doc = parse_tas(out.bytes);
    out.system.emplace(out.doc.build());
  } catch (const Error& e) {
    throw Failure{code, path + ": " + e.what()};
  }
  return out;
}

struct RunArgs {
  std::string tas;
  std::vector<Coord> window;
  std::size_t budget = 1'000'000;
  std::string out = "ascii";
  bool compact = false;
  std::string black_out;
  bool greatest_first = false;
};

CommandOutput cmd_run(const RunArgs& a) {
  const Window w = window_from(a.window, exit_code::usage);
  auto loaded = load_system(a.tas, exit_code::engine_error);
  const auto& system = *loaded.system;
  RunResult r;
  try {
    r = run_to_quiescence(system, w, a.budget,
                          a.greatest_first ? TieBreak::GreatestFirst : TieBreak::LeastFirst);
  } catch (const Error& e) {
    throw Failure{exit_code::engine_error, e.what()};
  }
  const PointSet black = black_set(system.tiles(), r.assembly);
  if (!a.black_out.empty()) {
    std::ofstream f(a.black_out, std::ios::binary);
    if (!f) throw Failure{exit_code::engine_error, "cannot write '" + a.black_out + "'"};
    f << format_points(black);
  }
  CommandOutput out;
  if (a.out == "ascii") {
    out.out = render_ascii(system.tiles(), r.assembly, w, a.compact);
  } else if (a.out == "svg") {
    out.out = render_svg(system.tiles(), r.assembly, system.seed(), w);
  } else if (a.out == "points") {
    out.out = format_points(black);
  } else {
    json placements = json::array();
    for (const auto& p : r.assembly.placements()) placements.push_back(placement_json(system.tiles(), p));
    json black_json = json::array();
    for (Vec2 p : black) black_json.push_back(vec_json(p));
    out.out = dump(report(
        "run", json{{"tas", file_input(a.tas, loaded.bytes)}},
        json{{"window", window_json(w)},
             {"budget", a.budget},
             {"tie_break", a.greatest_first ? "greatest-first" : "least-first"}},
        json{{"steps", r.steps},
             {"exhausted", r.exhausted},
             {"size", r.assembly.size()},
             {"placements", placements},
             {"black", black_json}}));
  }
  return out;
}

struct PumpArgs {
  std::string tas;
  std::size_t max_len = 0;
  std::size_t examples = 32;
};

CommandOutput cmd_pump_scan(const PumpArgs& a) {
  auto loaded = load_system(a.tas, exit_code::engine_error);
  const auto& system = *loaded.system;
  PumpScanReport r;
  try {
    r = pumpability_scan(system, a.max_len, a.examples);
  } catch (const Error& e) {
    throw Failure{exit_code::engine_error, e.what()};
  }
  const auto& tiles = system.tiles();
  json violations = json::array();
  for (const auto& p : r.violations) violations.push_back(path_json(tiles, p));
  json blocked = json::array();
  for (const auto& b : r.blocked_examples) {
    blocked.push_back(json{{"path", path_json(tiles, b.path)},
                           {"i", b.repetition.i},
                           {"j", b.repetition.j},
                           {"copy_index", b.blocked.copy_index},
                           {"collision", vec_json(b.blocked.collision)}});
  }
  json outcome{{"max_len_scanned", r.max_len_scanned},
               {"paths_scanned", r.paths_scanned},
               {"tile_count", r.tile_count},
               {"c_estimate", r.c_estimate ? json(*r.c_estimate) : json(nullptr)},
               {"pigeonhole_reached", r.pigeonhole_reached},
               {"violation_count", r.violation_count},
               {"violations", violations},
               {"blocked_count", r.blocked_count},
               {"blocked_examples", blocked}};
  CommandOutput out;
  out.out = dump(report("pump-scan", json{{"tas", file_input(a.tas, loaded.bytes)}},
                        json{{"max_len", a.max_len}, {"example_cap", a.examples}}, outcome));
  out.exit_code = r.violation_count == 0 ? exit_code::ok : exit_code::pump_violation;
  return out;
}

struct FitArgs {
  std::string points;
  std::vector<Coord> window;
  std::size_t max_parts = 1;
  Coord max_coord = 1;
  std::vector<Coord> predict_window;
  std::size_t candidate_cap = FitOptions{}.candidate_cap;
  std::size_t node_cap = FitOptions{}.node_cap;
};

CommandOutput cmd_fit(const FitArgs& a) {
  const Window w = window_from(a.window, exit_code::usage);
  std::optional<Window> w2;
  if (!a.predict_window.empty()) w2 = window_from(a.predict_window, exit_code::usage);
  std::string bytes;
  PointSet all;
  try {
    bytes = read_file(a.points);
    all = parse_points(bytes);
  } catch (const Error& e) {
    throw Failure{exit_code::usage, a.points + ": " + e.what()};
  }
  PointSet sample;
  for (Vec2 p : all) {
    if (w.contains(p)) sample.insert(p);
  }
  if (w2 && !w2->contains(w)) {
    throw Failure{exit_code::usage, to_string(w) + " is not inside " + to_string(*w2)};
  }
  FitOptions options{a.max_parts, a.max_coord, a.candidate_cap, a.node_cap};
  json parameters{{"window", window_json(w)},
                  {"max_parts", a.max_parts},
                  {"max_coord", a.max_coord},
                  {"candidate_cap", a.candidate_cap},
                  {"node_cap", a.node_cap},
                  {"predict_window", w2 ? window_json(*w2) : json(nullptr)}};
  json inputs{{"points", file_input(a.points, bytes)}};
  json outcome{{"sample_size", sample.size()}};

  CommandOutput out;
  FitResult r;
  try {
    r = fit_union_detailed(sample, w, options);
  } catch (const SearchSpaceExceeded& e) {
    outcome["result"] = "SearchSpaceExceeded";
    outcome["message"] = e.what();
    out.out = dump(report("fit", inputs, parameters, outcome));
    out.exit_code = exit_code::search_exceeded;
    return out;
  }
  outcome["result"] = r.fit ? "FitFound" : "NoFit";
  outcome["strategy"] = r.strategy;
  outcome["exhaustive"] = r.exhaustive;
  outcome["candidates"] = r.candidates;
  outcome["nodes"] = r.nodes;
  outcome["best_single_cover"] = r.best_single_cover;
  outcome["parts"] = r.fit ? union_json(*r.fit) : json(nullptr);
  if (!r.fit) {
    json uncovered = json::array();
    for (Vec2 p : r.greedy_uncovered) uncovered.push_back(vec_json(p));
    outcome["nearest_miss"] = json{{"parts", union_json(r.greedy_parts)}, {"uncovered", uncovered}};
  }
  if (r.fit && w2) {
    auto pred = predictive_check(*r.fit, all, w, *w2);
    outcome["prediction"] =
        json{{"ok", pred.ok}, {"mismatch", pred.mismatch ? vec_json(*pred.mismatch) : json(nullptr)}};
  }
  out.out = dump(report("fit", inputs, parameters, outcome));
  return out;
}

struct DirectedArgs {
  std::string tas;
  std::vector<Coord> window;
  std::size_t budget = 1'000'000;
  bool exhaustive = false;
};

CommandOutput cmd_directed(const DirectedArgs& a) {
  const Window w = window_from(a.window, exit_code::usage);
  auto loaded = load_system(a.tas, exit_code::usage);
  const auto& system = *loaded.system;
  DirectednessVerdict v;
  try {
    v = check_directed(system, w, a.budget, DirectedOptions{a.exhaustive});
  } catch (const Error& e) {
    throw Failure{exit_code::engine_error, e.what()};
  }
  const auto& tiles = system.tiles();
  json outcome{{"method", v.method}, {"work", v.work}, {"scope", "window"}};
  CommandOutput out;
  if (v.directed()) {
    outcome["verdict"] = "Directed";
  } else if (const auto* c = v.conflict()) {
    outcome["verdict"] = "ConflictWitness";
    outcome["position"] = vec_json(c->pos);
    outcome["tile_a"] = tiles.at(c->tile_a).name;
    outcome["tile_b"] = tiles.at(c->tile_b).name;
    outcome["trace_a"] = path_json(tiles, c->trace_a);
    outcome["trace_b"] = path_json(tiles, c->trace_b);
    out.exit_code = exit_code::conflict;
  } else {
    outcome["verdict"] = "Inconclusive";
    outcome["reason"] = v.inconclusive()->reason;
    out.exit_code = exit_code::inconclusive;
  }
  out.out = dump(report("directed", json{{"tas", file_input(a.tas, loaded.bytes)}},
                        json{{"window", window_json(w)},
                             {"budget", a.budget},
                             {"force_exhaustive", a.exhaustive}},
                        outcome));
  return out;
}

}  // namespace

CommandOutput run_cli(const std::vector<std::string>& args) {
  CLI::App app{"aTAM simulator and analysis toolkit", "tamlab"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "grow a system to quiescence inside a window");
  run_cmd->add_option("--tas", run.tas, "tile system file")->required();
  run_cmd->add_option("--window", run.window, "x0 y0 x1 y1")->expected(4)->required();
  run_cmd->add_option("--budget", run.budget, "attachment budget");
  run_cmd->add_option("--out", run.out, "render format")
      ->check(CLI::IsMember({"ascii", "svg", "json", "points"}));
  run_cmd->add_flag("--compact", run.compact, "ascii: # for black tiles, * otherwise");
  run_cmd->add_option("--black-out", run.black_out, "write the black set as a point file");
  run_cmd->add_flag("--greatest-first", run.greatest_first, "reverse the candidate order");

  PumpArgs pump;
  auto* pump_cmd = app.add_subcommand("pump-scan", "check pumpability of seed-rooted paths");
  pump_cmd->add_option("--tas", pump.tas, "tile system file")->required();
  pump_cmd->add_option("--max-len", pump.max_len, "longest path length scanned")->required();
  pump_cmd->add_option("--examples", pump.examples, "stored examples per list");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit a union of semi-doubly periodic sets");
  fit_cmd->add_option("--points", fit.points, "point file")->required();
  fit_cmd->add_option("--window", fit.window, "x0 y0 x1 y1")->expected(4)->required();
  fit_cmd->add_option("--max-parts", fit.max_parts, "K")->required();
  fit_cmd->add_option("--max-coord", fit.max_coord, "B")->required();
  fit_cmd->add_option("--predict-window", fit.predict_window, "x0 y0 x1 y1")->expected(4);
  fit_cmd->add_option("--candidate-cap", fit.candidate_cap, "candidate parts limit");
  fit_cmd->add_option("--node-cap", fit.node_cap, "search node limit");

  DirectedArgs dir;
  auto* dir_cmd = app.add_subcommand("directed", "windowed directedness check");
  dir_cmd->add_option("--tas", dir.tas, "tile system file")->required();
  dir_cmd->add_option("--window", dir.window, "x0 y0 x1 y1")->expected(4)->required();
  dir_cmd->add_option("--budget", dir.budget, "work budget");
  dir_cmd->add_flag("--exhaustive", dir.exhaustive, "skip the fixed-point shortcut");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  CommandOutput out;
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out.out = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    out.exit_code = exit_code::usage;
    out.err = std::string("tamlab: ") + e.what() + "\n";
    return out;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*pump_cmd) return cmd_pump_scan(pump);
    if (*fit_cmd) return cmd_fit(fit);
    return cmd_directed(dir);
  } catch (const Failure& f) {
    out.exit_code = f.code;
    out.err = "tamlab: " + f.message + "\n";
  } catch (const std::exception& e) {
    out.exit_code = exit_code::engine_error;
    out.err = std::string("tamlab: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace tamlab
