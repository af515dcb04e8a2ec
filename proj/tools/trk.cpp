// trk: command line harness over trk::core.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "trk/enumerate.hpp"
#include "trk/experiment.hpp"
#include "trk/intersection.hpp"

using namespace trk;

namespace {

struct Globals {
  std::string surface = "s05";
  std::uint64_t seed = 1;
  int bound = 4;
  int cap = 8;
  int steps = 60;
  int samples = -1;
  int workers = 1;
  std::string out;
  std::string chart;
  std::string track;
  std::string guide;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

ChartPtr load_chart(const Globals& g) {
  if (!g.chart.empty()) return chart_from_json(read_json(g.chart));
  return builtin_chart(g.surface);
}

TrainTrack load_track(const Globals& g) {
  if (!g.track.empty()) return track_from_json(read_json(g.track), g.chart.empty() ? nullptr : load_chart(g));
  return adapted_track(g.surface).track;
}

Coords parse_coords(const std::string& s) {
  Coords c;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) c.push_back(std::stoi(item));
  return c;
}

NormalCurve parse_curve(const ChartPtr& chart, const std::string& s) {
  return NormalCurve::from_coords(chart, parse_coords(s));
}

MultiCurve parse_multicurve(const ChartPtr& chart, const std::string& s) {
  return MultiCurve::from_coords(chart, parse_coords(s));
}

std::string coords_string(const Coords& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
  return s;
}

// Writes to --out when given, else stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

void emit(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

std::string distance_row(const NormalCurve& x, const NormalCurve& y, const Distance& d) {
  return coords_string(x.coords()) + "," + coords_string(y.coords()) + "," + std::to_string(d.certified ? d.value : d.lower) +
         "," + (d.certified ? "true" : "false") + "\n";
}

Measure load_guide(const Globals& g, const TrainTrack& t, std::int64_t weight, bool connected) {
  if (!g.guide.empty()) return measure_from_json(read_json(g.guide));
  auto rng = task_rng(g.seed, 0);
  return random_guide(t, vertex_cycles(t), weight, connected, rng);
}

std::string stage_csv(const SplittingSequence& seq, const CurveGraphIndex& idx) {
  const auto path = phi_path(seq);
  std::string out = "stage,move,phiCurve,dFromStart,massOfGuidePreimage,certified\n";
  for (std::size_t j = 0; j < seq.tracks.size(); ++j) {
    const Distance d = idx.distance(path.front(), path[j]);
    std::string move;
    if (j > 0) move = std::to_string(seq.moves[j - 1].branch) + std::string(to_string(seq.moves[j - 1].dir));
    out += std::to_string(j) + "," + move + "," + coords_string(path[j].coords()) + "," +
           std::to_string(d.certified ? d.value : d.lower) + "," + std::to_string(total_mass(seq.preimages[j])) + "," +
           (d.certified ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train tracks, splitting sequences and the curve graph on S_{0,5} and S_{1,2}"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--surface", g.surface, "Built-in surface")->check(CLI::IsMember({"s05", "s12"}));
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--bound", g.bound, "Universe coordinate bound")->check(CLI::PositiveNumber);
  app.add_option("--cap", g.cap, "BFS radius cap")->check(CLI::PositiveNumber);
  app.add_option("--steps", g.steps, "Sequence length limit (rounds for seq full)")->check(CLI::NonNegativeNumber);
  app.add_option("--samples", g.samples, "Sample count")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output path");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--chart", g.chart, "Chart JSON");
  app.add_option("--track", g.track, "Track JSON");
  app.add_option("--guide", g.guide, "Guide measure JSON");

  // surface
  auto* surface = app.add_subcommand("surface", "Surface data")->require_subcommand(1);
  surface->add_subcommand("info", "Signature and chart counts")->callback([&] {
    const ChartPtr c = load_chart(g);
    const SurfaceSig s = c->signature();
    emit(g, Json{{"name", c->name()},
                 {"genus", s.genus},
                 {"punctures", s.punctures},
                 {"edges", c->num_edges()},
                 {"triangles", c->num_triangles()},
                 {"complexity", s.complexity()},
                 {"completeTrackBranches", s.complete_track_branches()},
                 {"completeTrackSwitches", s.complete_track_switches()}});
  });

  // curves
  auto* curves = app.add_subcommand("curves", "Curve enumeration and intersection")->require_subcommand(1);
  curves->add_subcommand("enum", "Essential curves with coordinates <= bound")->callback([&] {
    Json out = Json::array();
    for (const auto& c : enumerate_curves(load_chart(g), g.bound)) out.push_back(c.coords());
    emit(g, out);
  });
  std::string ca, cb;
  auto* ci = curves->add_subcommand("i", "Geometric intersection number of two (multi)curves");
  ci->add_option("a", ca, "Coordinates, comma separated")->required();
  ci->add_option("b", cb, "Coordinates, comma separated")->required();
  ci->callback([&] {
    const ChartPtr c = load_chart(g);
    emit(g, std::to_string(intersection_number(parse_multicurve(c, ca), parse_multicurve(c, cb))));
  });

  // graph
  auto* graph = app.add_subcommand("graph", "Curve graph queries")->require_subcommand(1);
  std::string gx, gy, gp;
  auto* gdist = graph->add_subcommand("dist", "Distance of a pair, or of --samples random universe pairs");
  gdist->add_option("x", gx);
  gdist->add_option("y", gy);
  gdist->callback([&] {
    const CurveGraphIndex idx(load_chart(g), g.bound, g.cap);
    std::string out = "x,y,d,certified\n";
    if (!gx.empty() && !gy.empty()) {
      const auto x = parse_curve(idx.chart(), gx);
      const auto y = parse_curve(idx.chart(), gy);
      out += distance_row(x, y, idx.distance(x, y));
    } else {
      auto rng = task_rng(g.seed, 0);
      std::uniform_int_distribution<int> pick(0, idx.size() - 1);
      const int n = g.samples < 0 ? 100 : g.samples;
      for (int i = 0; i < n; ++i) {
        const auto& x = idx.curve(pick(rng));
        const auto& y = idx.curve(pick(rng));
        out += distance_row(x, y, idx.distance(x, y));
      }
    }
    emit(g, out);
  });
  auto* ggeo = graph->add_subcommand("geodesic", "A geodesic between two curves");
  ggeo->add_option("x", gx)->required();
  ggeo->add_option("y", gy)->required();
  ggeo->callback([&] {
    const CurveGraphIndex idx(load_chart(g), g.bound, g.cap);
    const auto path = idx.geodesic(parse_curve(idx.chart(), gx), parse_curve(idx.chart(), gy));
    if (!path) throw std::runtime_error("no certified geodesic within the radius cap");
    Json out = Json::array();
    for (const auto& c : *path) out.push_back(c.coords());
    emit(g, out);
  });
  auto* ggro = graph->add_subcommand("gromov", "Gromov product (x|y)_p");
  ggro->add_option("x", gx)->required();
  ggro->add_option("y", gy)->required();
  ggro->add_option("p", gp)->required();
  ggro->callback([&] {
    const CurveGraphIndex idx(load_chart(g), g.bound, g.cap);
    const ChartPtr& c = idx.chart();
    emit(g, rational_string(gromov_product(idx, parse_curve(c, gx), parse_curve(c, gy), parse_curve(c, gp))));
  });
  std::string rs = "4";
  auto* gscan = graph->add_subcommand("scanL", "Level sets L_a(alpha, beta, r) for a = 2^-4 .. 2^4");
  gscan->add_option("alpha", gx)->required();
  gscan->add_option("beta", gy)->required();
  gscan->add_option("--r", rs, "r as p/q");
  gscan->callback([&] {
    const CurveGraphIndex idx(load_chart(g), g.bound, g.cap);
    std::vector<Rational> grid;
    for (int e = -4; e <= 4; ++e) grid.push_back(e < 0 ? Rational(1, std::int64_t{1} << -e) : Rational(std::int64_t{1} << e));
    const auto rows =
        scan_L(idx, parse_multicurve(idx.chart(), gx), parse_multicurve(idx.chart(), gy), parse_rational(rs), grid);
    std::string out = "a,members,diameter,certified\n";
    for (const auto& r : rows) {
      out += rational_string(r.a) + "," + std::to_string(r.members.size()) + "," + std::to_string(r.diameter) + "," +
             (r.diameter_certified ? "true" : "false") + "\n";
    }
    emit(g, out);
  });

  // track
  auto* track = app.add_subcommand("track", "Train track operations")->require_subcommand(1);
  track->add_subcommand("adapted", "The built-in adapted track")->callback([&] {
    emit(g, adapted_to_json(adapted_track(g.surface)));
  });
  int branch = -1;
  std::string dir = "R";
  auto* tsplit = track->add_subcommand("split", "Split at a large branch");
  tsplit->add_option("--branch", branch, "Large branch")->required();
  tsplit->add_option("--dir", dir, "L, R or C")->check(CLI::IsMember({"L", "R", "C"}));
  tsplit->callback([&] {
    const SplitResult r = split(load_track(g), {branch, split_dir_from_string(dir)});
    emit(g, Json{{"track", track_to_json(r.track)}, {"matrix", r.matrix.m}});
  });
  track->add_subcommand("vcycles", "Vertex cycles of --track (default: adapted track)")->callback([&] {
    emit(g, vertex_cycles_to_json(vertex_cycles(load_track(g))));
  });
  track->add_subcommand("decompose", "Split --guide on the adapted track into mu0 + sum n_i nu_i")->callback([&] {
    const AdaptedTrack at = adapted_track(g.surface);
    if (g.guide.empty()) throw std::runtime_error("--guide is required");
    const PantsDecomposition d = decompose_at_adapted(at, measure_from_json(read_json(g.guide)));
    emit(g, Json{{"mu0", d.mu0}, {"n", d.n}, {"mu0AtLarge", d.mu0_at_large}});
  });

  // seq
  auto* seq = app.add_subcommand("seq", "Splitting sequences")->require_subcommand(1);
  std::int64_t weight = 10;
  seq->add_option("--weight", weight, "Coefficient bound of the random guide")->check(CLI::PositiveNumber);
  seq->add_subcommand("run", "Guided sequence; CSV per stage")->callback([&] {
    const TrainTrack t = load_track(g);
    const auto s = run_splitting_sequence(t, load_guide(g, t, weight, true), g.steps);
    emit(g, stage_csv(s, CurveGraphIndex(t.chart(), g.bound, g.cap)));
  });
  seq->add_subcommand("full", "Full splitting sequence of --steps rounds; CSV per stage")->callback([&] {
    const TrainTrack t = load_track(g);
    const auto s = run_full_splitting_sequence(t, load_guide(g, t, weight, false), g.steps);
    emit(g, stage_csv(s, CurveGraphIndex(t.chart(), g.bound, g.cap)));
  });
  seq->add_subcommand("verify", "Carrying, Lipschitz and fellow travelling checks of a guided sequence")->callback([&] {
    const TrainTrack t = load_track(g);
    const auto s = run_splitting_sequence(t, load_guide(g, t, weight, true), g.steps);
    const CurveGraphIndex idx(t.chart(), g.bound, g.cap);
    const auto path = phi_path(s);
    const LipschitzResult lip = lipschitz_check(path, idx);
    const QuasigeodesicFit fit = quasigeodesic_fit(path, idx);
    emit(g, Json{{"length", s.moves.size()},
                 {"halt", std::string(to_string(s.halt))},
                 {"carryingExact", carrying_exact(s)},
                 {"lipschitz", {{"maxStep", lip.max_step}, {"certified", lip.certified}}},
                 {"fit", {{"Q", rational_string(fit.q_fit)}, {"D", fit.d_fellow}, {"certified", fit.certified}}}});
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Verification suite")->require_subcommand(1);
  std::string json_out;
  auto* vall = verify->add_subcommand("all", "Run every check; CSV report to --out, JSON to --json");
  vall->add_option("--json", json_out, "Full JSON report path");
  int exit_code = 0;
  vall->callback([&] {
    ExperimentConfig cfg;
    cfg.surface = g.surface;
    cfg.seed = g.seed;
    cfg.bound = g.bound;
    cfg.cap = g.cap;
    cfg.max_steps = g.steps;
    cfg.workers = g.workers;
    if (g.samples >= 0) {
      cfg.vcycle_tracks = cfg.mass_bound_measures = cfg.lipschitz_splits = g.samples;
      cfg.fellow_sequences = cfg.pants_sequences = cfg.delta_triangles = g.samples;
    }
    cfg.validate();
    const RunReport r = verify_all(cfg);
    emit(g, report_to_csv(r));
    if (!json_out.empty()) std::ofstream(json_out) << report_to_json(r).dump(2) << '\n';
    if (!r.ok()) exit_code = 1;
  });

  // fixture
  auto* fixture = app.add_subcommand("fixture", "Built-in fixtures")->require_subcommand(1);
  std::string fname;
  auto* femit = fixture->add_subcommand("emit", "s05-chart, s12-chart, s05-adapted, s12-adapted, s05-pants, s12-pants");
  femit->add_option("name", fname)->required();
  femit->callback([&] { emit(g, emit_fixture(fname)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
