#include "trk/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "trk/intersection.hpp"

namespace trk {

void ExperimentConfig::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("ConfigInvalid: ") + what);
  };
  need(surface == "s05" || surface == "s12", "surface must be s05 or s12");
  need(bound >= 1 && cap >= 1, "bound and cap must be positive");
  need(max_steps >= 0 && guide_weight >= 1 && pants_guide_weight >= 1, "guide parameters must be positive");
  need(vcycle_tracks >= 0 && mass_bound_measures >= 0 && lipschitz_splits >= 0 && fellow_sequences >= 0 &&
           pants_sequences >= 0 && delta_triangles >= 0,
       "sample counts must be nonnegative");
  need(pants_rounds >= 0 && pants_extra_stages >= 0 && closure_cap >= 1, "round counts must be nonnegative");
  need(workers >= 1, "workers must be positive");
}

std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  return std::mt19937_64(seq);
}

const CheckResult& RunReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no check named " + name);
}

bool RunReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
}

Measure random_guide(const TrainTrack& t, const std::vector<VertexCycle>& cycles, std::int64_t weight,
                     bool connected, std::mt19937_64& rng) {
  if (cycles.empty()) throw TrackError("NoVertexCycles");
  std::uniform_int_distribution<std::int64_t> coef(0, weight);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Measure mu(t.num_branches(), 0);
    for (const auto& v : cycles) {
      const std::int64_t c = coef(rng);
      for (int b = 0; b < t.num_branches(); ++b) mu[b] += c * v.measure[b];
    }
    if (total_mass(mu) == 0) continue;
    if (connected && trainpath_cycles(t, mu).size() != 1) continue;
    return mu;
  }
  throw std::runtime_error("random_guide: no suitable guide after 10000 draws");
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs f(0..n-1) on `workers` threads; results are indexed by task.
template <class R>
std::vector<R> run_tasks(int n, int workers, const std::function<R(int)>& f) {
  std::vector<R> out(n);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto body = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int w = std::min(workers, std::max(n, 1));
  if (w <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < w; ++k) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

constexpr std::uint64_t kShortPhase = 1ULL << 32;
constexpr std::uint64_t kPantsPhase = 2ULL << 32;
constexpr std::uint64_t kMeasurePhase = 3ULL << 32;
constexpr std::uint64_t kDeltaPhase = 4ULL << 32;
constexpr int kBatch = 16;

struct ShortSample {
  SplittingSequence seq;
  std::vector<NormalCurve> path;
  LipschitzResult lip;
  QuasigeodesicFit fit;
};

struct PantsSample {
  SplittingSequence seq;
  int first_admissible = -1;
  std::optional<PantsRatioReport> report;
};

std::int64_t pants_intersection(const AdaptedTrack& at, const NormalCurve& c) {
  std::int64_t s = 0;
  for (const auto& p : at.pants) s += intersection_number(c, p);
  return s;
}

int first_admissible_stage(const SplittingSequence& seq, const CurveGraphIndex& g) {
  const auto c0 = vertex_cycles(seq.tracks.front());
  for (std::size_t j = 1; j < seq.tracks.size(); ++j) {
    bool all = true;
    for (const auto& x : vertex_cycles(seq.tracks[j])) {
      for (const auto& y : c0) {
        if (!g.fills(x.curve, y.curve)) {
          all = false;
          break;
        }
      }
      if (!all) break;
    }
    if (all) return static_cast<int>(j);
  }
  return -1;
}

}  // namespace

RunReport verify_all(const ExperimentConfig& cfg) {
  cfg.validate();
  RunReport rep;
  rep.config = cfg;
  ConstantsReport& k = rep.constants;
  k.surface = cfg.surface;
  k.seed = cfg.seed;
  auto phase_start = Clock::now();
  auto lap = [&](const char* name) {
    const auto now = Clock::now();
    rep.timing.emplace_back(name, std::chrono::duration<double>(now - phase_start).count());
    phase_start = now;
  };

  const AdaptedTrack at = adapted_track(cfg.surface);
  const ChartPtr chart = at.track.chart();
  const SurfaceSig sig = chart->signature();
  const CurveGraphIndex g(chart, cfg.bound, cfg.cap);
  const auto cycles0 = vertex_cycles(at.track);

  const SplitClosure closure = split_closure(at.track, cfg.closure_cap);
  const ClosureBounds cb = closure_bounds(closure);
  k.closure_types = cb.types;
  k.closure_complete = cb.complete;
  k.max_vertex_cycles = cb.max_vertex_cycles;
  k.q_vcycle_decomp = cb.max_cycle_mass_sum;
  k.k0_pants = residual_ratio_sup(at);
  lap("closure");

  // Short guided sequences: Lipschitz and fellow-travelling samples.
  std::vector<ShortSample> shorts;
  {
    long steps = 0;
    long certified = 0;
    const int max_tasks = 64 * std::max({cfg.fellow_sequences, cfg.lipschitz_splits / 4, 1});
    for (int base = 0; base < max_tasks && (certified < cfg.fellow_sequences || steps < cfg.lipschitz_splits);
         base += kBatch) {
      auto batch = run_tasks<ShortSample>(kBatch, cfg.workers, [&](int i) {
        auto rng = task_rng(cfg.seed, kShortPhase + static_cast<std::uint64_t>(base + i));
        ShortSample s;
        s.seq = run_splitting_sequence(at.track, random_guide(at.track, cycles0, cfg.guide_weight, true, rng),
                                       cfg.max_steps);
        s.path = phi_path(s.seq);
        s.lip = lipschitz_check(s.path, g);
        s.fit = quasigeodesic_fit(s.path, g);
        return s;
      });
      for (auto& s : batch) {
        if (certified >= cfg.fellow_sequences && steps >= cfg.lipschitz_splits) break;
        steps += static_cast<long>(s.seq.moves.size());
        if (s.fit.certified) ++certified;
        shorts.push_back(std::move(s));
      }
    }
  }
  lap("short sequences");

  // Long full splitting sequences for the pants-ratio measurement.
  std::vector<PantsSample> longs;
  {
    long done = 0;
    const int max_tasks = 8 * std::max(cfg.pants_sequences, 1);
    for (int base = 0; base < max_tasks && done < cfg.pants_sequences;) {
      const int n = static_cast<int>(cfg.pants_sequences - done);
      auto batch = run_tasks<PantsSample>(n, cfg.workers, [&](int i) {
        auto rng = task_rng(cfg.seed, kPantsPhase + static_cast<std::uint64_t>(base + i));
        PantsSample s;
        const Measure guide = random_guide(at.track, cycles0, cfg.pants_guide_weight, false, rng);
        SplittingSequence seq = run_full_splitting_sequence(at.track, guide, cfg.pants_rounds);
        s.first_admissible = first_admissible_stage(seq, g);
        if (s.first_admissible < 0) {
          s.seq = std::move(seq);
          return s;
        }
        const int m = std::min(static_cast<int>(seq.moves.size()), s.first_admissible + cfg.pants_extra_stages);
        s.seq = prefix(seq, m);
        const auto fc = vertex_cycles(s.seq.tracks.back());
        const NormalCurve ph = phi(s.seq.tracks.back(), fc);
        const VertexCycle* rho = nullptr;
        for (const auto& v : fc) {
          if (v.curve == ph && pants_intersection(at, v.curve) > 0) rho = &v;
        }
        for (const auto& v : fc) {
          if (!rho && pants_intersection(at, v.curve) > 0) rho = &v;
        }
        if (rho) s.report = pants_ratio_verify(at, s.seq, *rho, g);
        return s;
      });
      for (auto& s : batch) {
        if (done >= cfg.pants_sequences) break;
        if (s.report) {
          ++done;
        } else {
          ++k.pants_discarded;
        }
        longs.push_back(std::move(s));
      }
      base += n;
    }
  }
  lap("pants sequences");

  std::vector<const SplittingSequence*> all_seqs;
  for (const auto& s : shorts) all_seqs.push_back(&s.seq);
  for (const auto& s : longs) all_seqs.push_back(&s.seq);

  // Distinct tracks met along the sequences, in sampling order.
  std::vector<const TrainTrack*> tracks;
  std::size_t short_tracks = 0;  // tracks[0, short_tracks) come from the short sequences
  {
    std::set<std::vector<std::int64_t>> seen;
    for (std::size_t i = 0; i < all_seqs.size(); ++i) {
      if (i == shorts.size()) short_tracks = tracks.size();
      for (const auto& t : all_seqs[i]->tracks) {
        if (seen.insert(t.canonical().key).second) tracks.push_back(&t);
      }
    }
    if (longs.empty()) short_tracks = tracks.size();
  }

  // Extreme rays versus the trainpath characterization.
  {
    CheckResult c{"vcycle_trainpath", 0, 0, 0, {}};
    const int n = std::min<int>(cfg.vcycle_tracks, static_cast<int>(tracks.size()));
    auto res = run_tasks<std::pair<int, int>>(n, cfg.workers, [&](int i) {
      const auto rays = extreme_ray_measures(*tracks[i]);
      const int loose = static_cast<int>(trainpath_candidate_measures(*tracks[i]).size() - rays.size());
      return std::pair(rays == trainpath_vertex_measures(*tracks[i]) ? 0 : 1, loose);
    });
    c.checked = n;
    long loose = 0, loose_tracks = 0;
    for (const auto& [bad, extra] : res) {
      c.violations += bad;
      loose += extra;
      loose_tracks += extra > 0;
    }
    c.detail = "without the dumbbell condition: " + std::to_string(loose) + " non-extreme measures on " +
               std::to_string(loose_tracks) + " tracks";
    if (n < cfg.vcycle_tracks) {
      c.violations += cfg.vcycle_tracks - n;
      c.detail += "; only " + std::to_string(n) + " distinct tracks sampled";
    }
    rep.checks.push_back(c);
  }
  lap("vcycle_trainpath");

  // i(c_mu, xi) <= 2 mu(tau) on random carried measures over the same tracks.
  {
    CheckResult c{"mass_bound", 0, 0, 0, {}};
    const int nt = std::min<int>(std::max(cfg.vcycle_tracks, 1), static_cast<int>(tracks.size()));
    if (nt > 0 && cfg.mass_bound_measures > 0) {
      const int per = (cfg.mass_bound_measures + nt - 1) / nt;
      auto res = run_tasks<std::pair<long, long>>(nt, cfg.workers, [&](int i) {
        auto rng = task_rng(cfg.seed, kMeasurePhase + static_cast<std::uint64_t>(i));
        const TrainTrack& t = *tracks[i];
        const auto vc = vertex_cycles(t);
        long bad = 0;
        for (int s = 0; s < per; ++s) {
          const Measure mu = random_guide(t, vc, 3, false, rng);
          const MultiCurve mc = MultiCurve::from_coords(chart, t.pushforward(mu));
          if (!mass_bound_check(t, mu, mc, vc).ok) ++bad;
        }
        return std::pair<long, long>(per, bad);
      });
      for (const auto& [n, bad] : res) {
        c.checked += n;
        c.violations += bad;
      }
    }
    if (c.checked < cfg.mass_bound_measures) {
      c.violations += cfg.mass_bound_measures - c.checked;
      c.detail = "too few measures sampled";
    }
    rep.checks.push_back(c);
  }
  lap("mass_bound");

  // d <= 2 i + 1 over every pair of the universe.
  {
    CheckResult c{"distance_bound", 0, 0, 0, {}};
    const int n = g.size();
    auto res = run_tasks<std::array<long, 3>>(n, cfg.workers, [&](int a) {
      std::array<long, 3> r{0, 0, 0};
      for (int b = a + 1; b < n; ++b) {
        const Distance d = g.distance(g.curve(a), g.curve(b));
        if (!d.certified) {
          ++r[2];
          continue;
        }
        ++r[0];
        if (d.value > 2 * intersection_number(g.curve(a), g.curve(b)) + 1) ++r[1];
      }
      return r;
    });
    for (const auto& r : res) {
      c.checked += r[0];
      c.violations += r[1];
      c.truncated += r[2];
    }
    rep.checks.push_back(c);
  }
  lap("distance bound");

  // Single-split Lipschitz constant of Phi.
  {
    CheckResult c{"lipschitz", 0, 0, 0, {}};
    for (const auto& s : shorts) {
      c.checked += s.lip.steps;
      if (!s.lip.certified) {
        ++c.truncated;
        k.C_certified = false;
      }
      k.C_lipschitz = std::max(k.C_lipschitz, s.lip.max_step);
    }
    k.C_samples = c.checked;
    if (c.checked < cfg.lipschitz_splits) {
      c.violations += cfg.lipschitz_splits - c.checked;
      c.detail = "too few splits sampled";
    }
    rep.checks.push_back(c);
  }

  // Fellow travelling and quasigeodesic fit of the Phi-paths.
  {
    CheckResult c{"fellow_travel", 0, 0, 0, {}};
    for (const auto& s : shorts) {
      if (!s.fit.certified) {
        ++c.truncated;
        continue;
      }
      ++c.checked;
      k.D_fellow_travel = std::max(k.D_fellow_travel, s.fit.d_fellow);
      k.Q_fit = std::max(k.Q_fit, s.fit.q_fit);
    }
    k.fellow_samples = c.checked;
    k.fellow_skipped = c.truncated;
    if (c.checked < cfg.fellow_sequences) {
      c.violations += cfg.fellow_sequences - c.checked;
      c.detail = "too few certified sequences";
    }
    rep.checks.push_back(c);
  }
  lap("phi paths");

  // Pants-ratio constants.
  {
    CheckResult c{"pants_ratio", 0, 0, 0, {}};
    for (const auto& s : longs) {
      if (!s.report) continue;
      const PantsRatioReport& r = *s.report;
      ++c.checked;
      k.k_pants = std::max(k.k_pants, r.k);
      k.k_proof = std::max(k.k_proof, r.k_proof);
      k.q_witnessed = std::max(k.q_witnessed, r.q);
      k.kappa_k = std::max(k.kappa_k, r.kappa.k_used);
      for (const auto& st : r.stages) k.k0_witnessed = std::max(k.k0_witnessed, st.k0);
      const bool good = r.residual_ok && r.coefficient_ok && r.q_bound_ok &&
                        r.q <= Rational(k.q_vcycle_decomp) && r.kappa.monotone && r.kappa.stage0_small &&
                        r.kappa.final_large;
      if (!good) ++c.violations;
    }
    k.pants_samples = c.checked;
    c.truncated = k.pants_discarded;
    if (c.checked < cfg.pants_sequences) {
      c.violations += cfg.pants_sequences - c.checked;
      c.detail = "too few sequences with an admissible stage";
    }
    rep.checks.push_back(c);
  }
  lap("pants_ratio");

  // L_a level sets between the pants multicurve and the end of a long sequence.
  {
    CheckResult c{"la_scan", 0, 0, 0, {}};
    std::vector<std::pair<NormalCurve, int>> comps;
    for (const auto& p : at.pants) comps.emplace_back(p, 1);
    const MultiCurve pants(comps);
    std::optional<NormalCurve> beta;
    for (const auto& s : longs) {
      if (!s.report) continue;
      const NormalCurve ph = phi(s.seq.tracks.back());
      if (pants_intersection(at, ph) > 0) {
        beta = ph;
        break;
      }
    }
    if (beta) {
      std::vector<Rational> grid;
      for (int p = -4; p <= 4; ++p) grid.push_back(p < 0 ? Rational(1, 1 << -p) : Rational(1 << p));
      const auto rows = scan_L(g, pants, MultiCurve(*beta), Rational(4), grid);
      std::ostringstream os;
      for (const auto& row : rows) {
        ++c.checked;
        if (!row.diameter_certified) ++c.truncated;
        os << rational_string(row.a) << ":" << row.members.size() << "/" << row.diameter << " ";
      }
      c.detail = os.str();
    }
    rep.checks.push_back(c);
  }

  // Thin triangles over random universe triples.
  if (cfg.delta_triangles > 0 && g.size() >= 3) {
    auto rng = task_rng(cfg.seed, kDeltaPhase);
    std::uniform_int_distribution<int> pick(0, g.size() - 1);
    std::vector<std::array<NormalCurve, 3>> tris;
    for (int i = 0; i < cfg.delta_triangles; ++i) {
      const int a = pick(rng), b = pick(rng), d = pick(rng);
      tris.push_back({g.curve(a), g.curve(b), g.curve(d)});
    }
    const DeltaEstimate est = delta_estimate(g, tris);
    k.delta_estimate = est.delta;
    k.delta_triangles = est.triangles_used;
  }
  lap("scans");

  // Structural counts on every track; vertex-cycle diameters on the short-sequence tracks.
  {
    CheckResult c{"structure", 0, 0, 0, {}};
    const int nb = sig.complete_track_branches();
    const int ns = sig.complete_track_switches();
    auto res = run_tasks<std::array<long, 4>>(static_cast<int>(tracks.size()), cfg.workers, [&](int i) {
      const TrainTrack& t = *tracks[i];
      std::array<long, 4> r{1, 0, 0, 0};  // checked, violations, uncertified, diameter
      bool ok = t.num_branches() == nb && t.num_switches() == ns && t.generic() && recurrence_check(t);
      std::vector<VertexCycle> vc;
      try {
        vc = vertex_cycles(t);
      } catch (const TrackError&) {
        ok = false;
      }
      if (static_cast<int>(vc.size()) > k.max_vertex_cycles) ok = false;
      for (const auto& v : vc) {
        if (total_mass(v.measure) > 2 * t.num_branches()) ok = false;
      }
      for (std::size_t a = 0; a < vc.size() && static_cast<std::size_t>(i) < short_tracks; ++a) {
        for (std::size_t b = a + 1; b < vc.size(); ++b) {
          const Distance d = g.distance(vc[a].curve, vc[b].curve);
          if (!d.certified) {
            ++r[2];
          } else {
            r[3] = std::max<long>(r[3], d.value);
          }
        }
      }
      if (!ok) r[1] = 1;
      return r;
    });
    long uncertified = 0;
    for (const auto& r : res) {
      c.checked += r[0];
      c.violations += r[1];
      uncertified += r[2];
      k.D_vcycle_diam = std::max<int>(k.D_vcycle_diam, static_cast<int>(r[3]));
    }
    c.detail = "vertex-cycle pairs uncertified: " + std::to_string(uncertified);
    rep.checks.push_back(c);
  }

  // Carrying exactness of every sampled sequence.
  {
    CheckResult c{"carrying", 0, 0, 0, {}};
    for (const auto* s : all_seqs) {
      ++c.checked;
      if (!carrying_exact(*s)) ++c.violations;
    }
    rep.checks.push_back(c);
  }
  lap("structure");
  return rep;
}

namespace {

std::vector<std::pair<std::string, std::string>> constant_rows(const ConstantsReport& k) {
  return {{"surface", k.surface},
          {"seed", std::to_string(k.seed)},
          {"D_vcycle_diam", std::to_string(k.D_vcycle_diam)},
          {"C_lipschitz", std::to_string(k.C_lipschitz)},
          {"C_certified", k.C_certified ? "true" : "false"},
          {"C_samples", std::to_string(k.C_samples)},
          {"Q_fit", rational_string(k.Q_fit)},
          {"D_fellow_travel", std::to_string(k.D_fellow_travel)},
          {"fellow_samples", std::to_string(k.fellow_samples)},
          {"fellow_skipped", std::to_string(k.fellow_skipped)},
          {"delta_estimate", rational_string(k.delta_estimate)},
          {"delta_triangles", std::to_string(k.delta_triangles)},
          {"k_pants", rational_string(k.k_pants)},
          {"k_proof", rational_string(k.k_proof)},
          {"k0_pants", rational_string(k.k0_pants)},
          {"k0_witnessed", rational_string(k.k0_witnessed)},
          {"q_vcycle_decomp", std::to_string(k.q_vcycle_decomp)},
          {"q_witnessed", rational_string(k.q_witnessed)},
          {"kappa_k", rational_string(k.kappa_k)},
          {"pants_samples", std::to_string(k.pants_samples)},
          {"pants_discarded", std::to_string(k.pants_discarded)},
          {"closure_types", std::to_string(k.closure_types)},
          {"closure_complete", k.closure_complete ? "true" : "false"},
          {"max_vertex_cycles", std::to_string(k.max_vertex_cycles)}};
}

}  // namespace

Json report_to_json(const RunReport& r) {
  const auto& c = r.config;
  Json cfg = {{"surface", c.surface},
              {"bound", c.bound},
              {"cap", c.cap},
              {"maxSteps", c.max_steps},
              {"guideWeight", c.guide_weight},
              {"vcycleTracks", c.vcycle_tracks},
              {"massBoundMeasures", c.mass_bound_measures},
              {"lipschitzSplits", c.lipschitz_splits},
              {"fellowSequences", c.fellow_sequences},
              {"pantsSequences", c.pants_sequences},
              {"pantsGuideWeight", c.pants_guide_weight},
              {"pantsRounds", c.pants_rounds},
              {"pantsExtraStages", c.pants_extra_stages},
              {"closureCap", c.closure_cap},
              {"deltaTriangles", c.delta_triangles},
              {"seed", c.seed},
              {"workers", c.workers}};
  Json constants = Json::object();
  for (const auto& [key, value] : constant_rows(r.constants)) constants[key] = value;
  Json checks = Json::array();
  for (const auto& ch : r.checks) {
    checks.push_back({{"name", ch.name},
                      {"checked", ch.checked},
                      {"violations", ch.violations},
                      {"truncated", ch.truncated},
                      {"detail", ch.detail},
                      {"ok", ch.ok()}});
  }
  Json timing = Json::object();
  for (const auto& [phase, secs] : r.timing) timing[phase] = secs;
  return {{"config", cfg}, {"constants", constants}, {"checks", checks}, {"timing", timing}, {"ok", r.ok()}};
}

std::string report_to_csv(const RunReport& r) {
  std::ostringstream out;
  out << "name,checked,violations,truncated\n";
  for (const auto& ch : r.checks) {
    out << ch.name << ',' << ch.checked << ',' << ch.violations << ',' << ch.truncated << '\n';
  }
  out << "constant,value\n";
  for (const auto& [key, value] : constant_rows(r.constants)) out << key << ',' << value << '\n';
  return out.str();
}

Json emit_fixture(const std::string& name) {
  const auto dash = name.find('-');
  const std::string surface = name.substr(0, dash);
  const std::string kind = dash == std::string::npos ? "" : name.substr(dash + 1);
  if ((surface != "s05" && surface != "s12") || (kind != "chart" && kind != "adapted" && kind != "pants")) {
    throw std::invalid_argument("UnknownFixture: " + name);
  }
  if (kind == "chart") return chart_to_json(*builtin_chart(surface));
  const AdaptedTrack at = adapted_track(surface);
  if (kind == "adapted") return adapted_to_json(at);
  Json pants = Json::array();
  for (const auto& p : at.pants) pants.push_back(curve_to_json(p));
  return {{"chart", surface}, {"pants", pants}};
}

}  // namespace trk
