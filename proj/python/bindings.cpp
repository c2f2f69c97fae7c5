#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tamlab/commands.hpp"
#include "tamlab/engine.hpp"
#include "tamlab/errors.hpp"
#include "tamlab/fractal.hpp"
#include "tamlab/io.hpp"
#include "tamlab/paths.hpp"
#include "tamlab/periodic.hpp"

namespace py = pybind11;
using namespace tamlab;

namespace {

// Python sees points as (x, y) tuples and windows as (x0, y0, x1, y1).
using Pt = std::pair<Coord, Coord>;
using Win = std::tuple<Coord, Coord, Coord, Coord>;
using Part = std::tuple<Pt, Pt, Pt>;

Vec2 vec(Pt p) { return {p.first, p.second}; }
Pt pt(Vec2 v) { return {v.x, v.y}; }
Window win(const Win& w) {
  return Window::make(std::get<0>(w), std::get<1>(w), std::get<2>(w), std::get<3>(w));
}
SdpSet sdp(const Part& p) { return {vec(std::get<0>(p)), vec(std::get<1>(p)), vec(std::get<2>(p))}; }
Part part(const SdpSet& s) { return {pt(s.base), pt(s.u), pt(s.v)}; }

SdpUnion sdp_union(const std::vector<Part>& parts) {
  SdpUnion u;
  for (const auto& p : parts) u.parts.push_back(sdp(p));
  return u;
}
std::vector<Part> parts_of(const SdpUnion& u) {
  std::vector<Part> out;
  for (const auto& s : u.parts) out.push_back(part(s));
  return out;
}

std::vector<Pt> pts(const PointSet& s) {
  std::vector<Pt> out;
  for (Vec2 p : s) out.push_back(pt(p));
  return out;
}
PointSet point_set(const std::vector<Pt>& v) {
  PointSet out;
  for (Pt p : v) out.insert(vec(p));
  return out;
}

class PySystem {
 public:
  explicit PySystem(const std::string& text) : doc_(parse_tas(text)), system_(doc_.build()) {}

  int temperature() const { return system_.temperature(); }
  std::vector<std::string> tile_names() const {
    std::vector<std::string> out;
    for (const auto& t : system_.tiles()) out.push_back(t.name);
    return out;
  }
  std::string serialize() const { return serialize_tas(doc_); }

  py::dict cells(const Assembly& a) const {
    py::dict d;
    for (const auto& [p, t] : a) d[py::make_tuple(p.x, p.y)] = system_.tiles()[t].name;
    return d;
  }
  py::list trace(const Trace& tr) const {
    py::list l;
    for (const auto& pl : tr) {
      l.append(py::make_tuple(py::make_tuple(pl.pos.x, pl.pos.y), system_.tiles()[pl.tile].name));
    }
    return l;
  }

  py::dict run(const Win& w, std::size_t budget, bool greatest_first) const {
    RunResult r;
    {
      py::gil_scoped_release release;
      r = run_to_quiescence(system_, win(w), budget,
                            greatest_first ? TieBreak::GreatestFirst : TieBreak::LeastFirst);
    }
    py::dict d;
    d["cells"] = cells(r.assembly);
    d["black"] = pts(black_set(system_.tiles(), r.assembly));
    d["exhausted"] = r.exhausted;
    d["steps"] = r.steps;
    return d;
  }

  py::dict directed(const Win& w, std::size_t budget, bool exhaustive) const {
    DirectednessVerdict v;
    {
      py::gil_scoped_release release;
      v = check_directed(system_, win(w), budget, DirectedOptions{exhaustive});
    }
    py::dict d;
    d["method"] = v.method;
    d["work"] = v.work;
    if (v.directed()) {
      d["verdict"] = "Directed";
    } else if (const auto* c = v.conflict()) {
      d["verdict"] = "ConflictWitness";
      d["position"] = py::make_tuple(c->pos.x, c->pos.y);
      d["tile_a"] = system_.tiles()[c->tile_a].name;
      d["tile_b"] = system_.tiles()[c->tile_b].name;
      d["trace_a"] = trace(c->trace_a);
      d["trace_b"] = trace(c->trace_b);
    } else {
      d["verdict"] = "Inconclusive";
      d["reason"] = v.inconclusive()->reason;
    }
    return d;
  }

  py::dict pump_scan(std::size_t max_len, std::size_t examples) const {
    PumpScanReport r;
    {
      py::gil_scoped_release release;
      r = pumpability_scan(system_, max_len, examples);
    }
    py::dict d;
    d["paths_scanned"] = r.paths_scanned;
    d["tile_count"] = r.tile_count;
    d["c_estimate"] = r.c_estimate ? py::object(py::int_(*r.c_estimate)) : py::none();
    d["pigeonhole_reached"] = r.pigeonhole_reached;
    d["violation_count"] = r.violation_count;
    d["blocked_count"] = r.blocked_count;
    py::list blocked;
    for (const auto& b : r.blocked_examples) {
      py::dict e;
      e["path"] = trace(b.path);
      e["i"] = b.repetition.i;
      e["j"] = b.repetition.j;
      e["copy"] = b.blocked.copy_index;
      e["collision"] = py::make_tuple(b.blocked.collision.x, b.blocked.collision.y);
      blocked.append(e);
    }
    d["blocked_examples"] = blocked;
    return d;
  }

 private:
  TasDocument doc_;
  TileAssemblySystem system_;
};

FractalSpec fractal(int base, const std::optional<std::vector<Pt>>& generator) {
  if (!generator) return FractalSpec::sierpinski();
  FractalSpec s{base, {}};
  for (Pt p : *generator) s.generator.push_back(vec(p));
  return s;
}

py::dict fit_dict(const FitResult& r) {
  py::dict d;
  d["parts"] = r.fit ? py::object(py::cast(parts_of(*r.fit))) : py::none();
  d["strategy"] = r.strategy;
  d["exhaustive"] = r.exhaustive;
  d["candidates"] = r.candidates;
  d["nodes"] = r.nodes;
  d["best_single_cover"] = r.best_single_cover;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Abstract tile assembly simulation and analysis";

  auto base = py::register_exception<Error>(m, "TamlabError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidSystem>(m, "InvalidSystem", base.ptr());
  py::register_exception<SearchSpaceExceeded>(m, "SearchSpaceExceeded", base.ptr());
  py::register_exception<TrivialFractal>(m, "TrivialFractal", base.ptr());

  py::class_<PySystem>(m, "System")
      .def(py::init<const std::string&>(), py::arg("text"))
      .def_static("load", [](const std::string& path) { return PySystem(read_file(path)); })
      .def_property_readonly("temperature", &PySystem::temperature)
      .def_property_readonly("tile_names", &PySystem::tile_names)
      .def("serialize", &PySystem::serialize)
      .def("run", &PySystem::run, py::arg("window"), py::arg("budget") = 1'000'000,
           py::arg("greatest_first") = false)
      .def("check_directed", &PySystem::directed, py::arg("window"),
           py::arg("budget") = 50'000'000, py::arg("exhaustive") = false)
      .def("pump_scan", &PySystem::pump_scan, py::arg("max_len"), py::arg("examples") = 8);

  m.def("contains_sdp", [](const Part& p, Pt q) { return contains_sdp(sdp(p), vec(q)); },
        py::arg("part"), py::arg("point"));
  m.def("window_points",
        [](const std::vector<Part>& parts, const Win& w) {
          return pts(window_points(sdp_union(parts), win(w)));
        },
        py::arg("parts"), py::arg("window"));
  m.def("fit_union",
        [](const std::vector<Pt>& sample, const Win& w, std::size_t max_parts, Coord max_coord) {
          FitResult r;
          {
            py::gil_scoped_release release;
            r = fit_union_detailed(point_set(sample), win(w), FitOptions{max_parts, max_coord});
          }
          return fit_dict(r);
        },
        py::arg("sample"), py::arg("window"), py::arg("max_parts"), py::arg("max_coord"));
  m.def("fractal_points",
        [](const Win& w, int base, const std::optional<std::vector<Pt>>& generator) {
          return pts(fractal_points(fractal(base, generator), win(w)));
        },
        py::arg("window"), py::arg("base") = 2, py::arg("generator") = py::none());
  m.def("mismatch_witness",
        [](const Win& w, std::size_t max_parts, Coord max_coord, int base,
           const std::optional<std::vector<Pt>>& generator) {
          MismatchReport r;
          {
            py::gil_scoped_release release;
            r = mismatch_witness(fractal(base, generator), win(w), max_parts, max_coord);
          }
          py::dict d = fit_dict(r.search);
          d["sample_size"] = r.sample_size;
          d["fit_found"] = r.fit_found;
          d["nearest_miss"] = parts_of(r.nearest_miss);
          return d;
        },
        py::arg("window"), py::arg("max_parts"), py::arg("max_coord"), py::arg("base") = 2,
        py::arg("generator") = py::none());
  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          CommandOutput o = run_cli(args);
          return py::make_tuple(o.exit_code, o.out, o.err);
        },
        py::arg("args"));
}
