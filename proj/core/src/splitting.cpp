#include "trk/splitting.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "trk/cone.hpp"
#include "trk/intersection.hpp"

namespace trk {

std::string_view to_string(Halt h) {
  switch (h) {
    case Halt::None: return "none";
    case Halt::VertexCycle: return "vertex-cycle";
    case Halt::MaxSteps: return "max-steps";
    case Halt::CentralTie: return "central-tie";
    case Halt::Rounds: return "rounds";
  }
  return "?";
}

namespace {

void require_carried(const TrainTrack& t, const Measure& mu) {
  if (static_cast<int>(mu.size()) != t.num_branches()) throw TrackError("NotCarried: measure has the wrong length");
  if (std::any_of(mu.begin(), mu.end(), [](std::int64_t x) { return x < 0; })) {
    throw TrackError("NotCarried: negative weight");
  }
  if (!t.check_switch_conditions(mu)) throw TrackError("NotCarried: switch conditions fail");
}

bool is_vertex_measure(const TrainTrack& t, const Measure& mu) {
  Measure p = mu;
  make_primitive(p);
  const auto rays = extreme_ray_measures(t);
  return std::binary_search(rays.begin(), rays.end(), p);
}

// Appends one split to the sequence; false when the guide would need a central split.
bool push_split(SplittingSequence& seq, int e, bool zero_default) {
  const TrainTrack& t = seq.tracks.back();
  const Measure& mu = seq.preimages.back();
  SplitDir dir = SplitDir::Left;
  if (mu[e] > 0 || !zero_default) dir = compatible_split_direction(t, e, mu);
  if (dir == SplitDir::Central) return false;
  const SplitMove mv{e, dir};
  auto pre = split_preimage(t, mv, mu);
  if (!pre) throw std::logic_error("splitting: compatible split lost the guide");
  SplitResult r = split(t, mv);
  seq.moves.push_back(mv);
  seq.matrices.push_back(std::move(r.matrix));
  seq.tracks.push_back(std::move(r.track));
  seq.preimages.push_back(std::move(*pre));
  return true;
}

}  // namespace

SplittingSequence run_splitting_sequence(const TrainTrack& t0, const Measure& guide, int max_steps) {
  require_carried(t0, guide);
  if (total_mass(guide) == 0) throw TrackError("NoLargeBranchWithMass: zero guide");
  SplittingSequence seq;
  seq.tracks.push_back(t0);
  seq.guide = guide;
  seq.preimages.push_back(guide);
  while (true) {
    const TrainTrack& t = seq.tracks.back();
    const Measure& mu = seq.preimages.back();
    if (is_vertex_measure(t, mu)) {
      seq.halt = Halt::VertexCycle;
      break;
    }
    if (static_cast<int>(seq.moves.size()) >= max_steps) {
      seq.halt = Halt::MaxSteps;
      break;
    }
    int e = -1;
    bool massive = false;
    for (int b : t.large_branches()) {
      if (mu[b] == 0) continue;
      massive = true;
      if (compatible_split_direction(t, b, mu) != SplitDir::Central) {
        e = b;
        break;
      }
    }
    if (!massive) throw TrackError("NoLargeBranchWithMass");
    if (e < 0) {
      seq.halt = Halt::CentralTie;
      break;
    }
    push_split(seq, e, false);
  }
  return seq;
}

SplittingSequence run_full_splitting_sequence(const TrainTrack& t0, const Measure& guide, int rounds) {
  require_carried(t0, guide);
  SplittingSequence seq;
  seq.tracks.push_back(t0);
  seq.guide = guide;
  seq.preimages.push_back(guide);
  for (int r = 0; r < rounds; ++r) {
    const TrainTrack start = seq.tracks.back();
    const auto perm = start.canonical().perm;
    std::vector<int> order = start.large_branches();
    std::sort(order.begin(), order.end(), [&](int x, int y) { return perm[x] < perm[y]; });
    seq.round_starts.push_back(static_cast<int>(seq.moves.size()));
    for (int e : order) {
      if (!push_split(seq, e, true)) {
        seq.halt = Halt::CentralTie;
        return seq;
      }
    }
    ++seq.rounds_completed;
  }
  seq.halt = Halt::Rounds;
  return seq;
}

SplittingSequence prefix(const SplittingSequence& seq, int m) {
  if (m < 0 || m > static_cast<int>(seq.moves.size())) throw std::out_of_range("prefix: bad length");
  if (m == static_cast<int>(seq.moves.size())) return seq;
  SplittingSequence out;
  out.tracks.assign(seq.tracks.begin(), seq.tracks.begin() + m + 1);
  out.moves.assign(seq.moves.begin(), seq.moves.begin() + m);
  out.matrices.assign(seq.matrices.begin(), seq.matrices.begin() + m);
  out.preimages.assign(seq.preimages.begin(), seq.preimages.begin() + m + 1);
  out.guide = seq.guide;
  out.halt = Halt::MaxSteps;
  for (int r : seq.round_starts) {
    if (r < m) out.round_starts.push_back(r);
  }
  out.rounds_completed = static_cast<int>(out.round_starts.size());
  return out;
}

bool carrying_exact(const SplittingSequence& seq) {
  const int m = static_cast<int>(seq.moves.size());
  if (static_cast<int>(seq.tracks.size()) != m + 1 || static_cast<int>(seq.preimages.size()) != m + 1) return false;
  CarryingMatrix prod = CarryingMatrix::identity(seq.tracks.front().num_branches());
  for (int j = 0; j <= m; ++j) {
    if (prod.apply(seq.preimages[j]) != seq.guide) return false;
    if (j < m) prod = prod.compose(seq.matrices[j]);
  }
  return true;
}

std::vector<NormalCurve> phi_path(const SplittingSequence& seq) {
  std::vector<NormalCurve> out;
  out.reserve(seq.tracks.size());
  for (const auto& t : seq.tracks) out.push_back(phi(t));
  return out;
}

LipschitzResult lipschitz_check(const std::vector<NormalCurve>& phi, const CurveGraphIndex& g) {
  LipschitzResult r;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    const Distance d = g.distance(phi[i], phi[i + 1]);
    ++r.steps;
    if (!d.certified) r.certified = false;
    r.max_step = std::max(r.max_step, d.reachable() ? d.value : d.lower);
  }
  return r;
}

namespace {

// Difference constraints t_j - t_i <= w[i][j]; feasible iff no negative cycle.
bool feasible(const std::vector<std::vector<int>>& d, Rational L) {
  const int n = static_cast<int>(d.size());
  std::vector<std::vector<std::optional<Rational>>> w(n, std::vector<std::optional<Rational>>(n));
  auto tighten = [&](int i, int j, Rational c) {
    if (!w[i][j] || c < *w[i][j]) w[i][j] = c;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational dij(d[i][j]);
      tighten(i, j, L * dij + L);
      tighten(j, i, -std::max(Rational(0), dij / L - L));
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!w[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (w[k][j]) tighten(i, j, *w[i][k] + *w[k][j]);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (w[i][i] && *w[i][i] < 0) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> min_quasigeodesic_constant(const std::vector<std::vector<int>>& d, Rational max_l) {
  constexpr std::int64_t kStep = 8;
  std::int64_t lo = kStep;
  std::int64_t hi = boost::rational_cast<std::int64_t>(max_l * kStep);
  if (hi < lo || !feasible(d, Rational(hi, kStep))) return std::nullopt;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (feasible(d, Rational(mid, kStep))) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return Rational(lo, kStep);
}

QuasigeodesicFit quasigeodesic_fit(const std::vector<NormalCurve>& path, const CurveGraphIndex& g) {
  if (path.empty()) throw std::invalid_argument("quasigeodesic_fit: empty path");
  QuasigeodesicFit fit;
  const int n = static_cast<int>(path.size());
  std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
  int dmax = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Distance dij = g.distance(path[i], path[j]);
      if (!dij.certified) fit.certified = false;
      d[i][j] = d[j][i] = dij.reachable() ? dij.value : dij.lower;
      dmax = std::max(dmax, d[i][j]);
    }
  }
  fit.q_fit = *min_quasigeodesic_constant(d, Rational(dmax + 1));
  auto geo = g.geodesic(path.front(), path.back());
  if (!geo) {
    fit.certified = false;
    fit.d_fellow = -1;
    return fit;
  }
  fit.geodesic = std::move(*geo);
  try {
    fit.d_fellow = one_sided_distance(g, path, fit.geodesic);
  } catch (const GraphError&) {
    fit.certified = false;
    fit.d_fellow = -1;
  }
  return fit;
}

namespace {

std::int64_t pants_intersection(const AdaptedTrack& at, const MultiCurve& c) {
  std::int64_t s = 0;
  for (const auto& p : at.pants) s += intersection_number(c, MultiCurve(p));
  return s;
}

std::int64_t pants_intersection(const AdaptedTrack& at, const NormalCurve& c) {
  return pants_intersection(at, MultiCurve(c));
}

std::vector<std::vector<std::int64_t>> residual_rows(const AdaptedTrack& at) {
  auto rows = at.track.switch_rows();
  for (int b : at.marker) {
    std::vector<std::int64_t> r(at.track.num_branches(), 0);
    r[b] = 1;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

Rational residual_ratio(const AdaptedTrack& at, const Measure& mu) {
  const PantsDecomposition dec = decompose_at_adapted(at, mu);
  const MultiCurve c = MultiCurve::from_coords(at.track.chart(), at.track.pushforward(mu));
  const std::int64_t s = pants_intersection(at, c);
  const std::int64_t at_large = std::accumulate(dec.mu0_at_large.begin(), dec.mu0_at_large.end(), std::int64_t{0});
  const std::int64_t mass = total_mass(dec.mu0);
  if (s != at_large) throw TrackError("ResidualBoundViolated: residual weight on the large branches differs");
  if (mass < s) throw TrackError("ResidualBoundViolated: residual mass below the intersection count");
  if (s == 0) {
    if (mass != 0) throw TrackError("ResidualBoundViolated: residual mass without intersections");
    return Rational(0);
  }
  return Rational(mass, s);
}

Rational residual_ratio_sup(const AdaptedTrack& at) {
  const auto rays = extreme_rays(residual_rows(at), at.track.num_branches());
  Rational best(0);
  for (const auto& r : rays) {
    std::int64_t s = 0;
    for (int e : at.large) s += r[e];
    if (s == 0) throw TrackError("ResidualBoundViolated: residual ray misses every large branch");
    best = std::max(best, Rational(total_mass(r), s));
  }
  return best;
}

namespace {

struct KappaCandidate {
  int stage;
  std::int64_t x;  // i(gamma, rho)
  std::int64_t y;  // i(gamma, P)
};

// Stages with a member of L_s(rho, P, k) at each s.
std::vector<std::vector<int>> kappa_members(const std::vector<KappaCandidate>& cands, const std::vector<Rational>& grid,
                                            std::int64_t rho_p, Rational k) {
  std::vector<std::vector<int>> out;
  for (const Rational& s : grid) {
    std::vector<int> st;
    for (const auto& c : cands) {
      const Rational v = std::max(s * Rational(c.x), Rational(c.y) / (s * Rational(rho_p)));
      if (v <= k && (st.empty() || st.back() != c.stage)) st.push_back(c.stage);
    }
    out.push_back(std::move(st));
  }
  return out;
}

bool monotone_selection(const std::vector<std::vector<int>>& members) {
  int last = 0;
  for (const auto& st : members) {
    auto it = std::lower_bound(st.begin(), st.end(), last);
    if (it == st.end()) return false;
    last = *it;
  }
  return true;
}

}  // namespace

PantsRatioReport pants_ratio_verify(const AdaptedTrack& at, const SplittingSequence& seq, const VertexCycle& rho,
                             const CurveGraphIndex& g) {
  const int m = static_cast<int>(seq.moves.size());
  if (!(seq.tracks.front() == at.track)) throw TrackError("NotAdapted: sequence does not start at the adapted track");
  std::vector<std::vector<VertexCycle>> cycles;
  for (const auto& t : seq.tracks) cycles.push_back(vertex_cycles(t));

  // down[j] carries measures on tracks[j] to tracks[0]; up[j] carries tracks[m] to tracks[j].
  std::vector<CarryingMatrix> down{CarryingMatrix::identity(seq.tracks.front().num_branches())};
  for (int j = 0; j < m; ++j) down.push_back(down.back().compose(seq.matrices[j]));
  std::vector<CarryingMatrix> up(m + 1);
  up[m] = CarryingMatrix::identity(seq.tracks.back().num_branches());
  for (int j = m - 1; j >= 0; --j) up[j] = seq.matrices[j].compose(up[j + 1]);

  const std::int64_t rho_p = pants_intersection(at, rho.curve);
  if (rho_p == 0) throw GraphError("DegeneratePair: rho misses the pants decomposition");

  PantsRatioReport rep;
  rep.k0 = residual_ratio_sup(at);
  auto check_residual = [&](const Measure& mu) -> Rational {
    try {
      const Rational r = residual_ratio(at, mu);
      if (r > rep.k0) rep.residual_ok = false;
      return r;
    } catch (const TrackError&) {
      rep.residual_ok = false;
      return Rational(0);
    }
  };
  check_residual(seq.guide);
  check_residual(down[m].apply(rho.measure));

  for (int j = 1; j <= m; ++j) {
    bool admissible = true;
    for (const auto& xi : cycles[j]) {
      for (const auto& alpha : cycles[0]) {
        if (!g.fills(xi.curve, alpha.curve)) {
          admissible = false;
          break;
        }
      }
      if (!admissible) break;
    }
    if (!admissible) continue;
    StageReport st;
    st.stage = j;
    for (int a = 0; a < static_cast<int>(cycles[j].size()); ++a) {
      const auto& alpha = cycles[j][a].curve;
      const Rational ratio(intersection_number(rho.curve, alpha) * pants_intersection(at, alpha), rho_p);
      if (st.alpha < 0 || ratio < st.k) {
        st.k = ratio;
        st.alpha = a;
      }
    }
    const Measure eta = up[j].apply(rho.measure);
    Rational best_coef(0);
    const NormalCurve* best_xi = nullptr;
    for (const auto& xi : cycles[j]) {
      std::optional<Rational> coef;
      for (std::size_t b = 0; b < eta.size(); ++b) {
        if (xi.measure[b] > 0) {
          const Rational c(eta[b], xi.measure[b]);
          if (!coef || c < *coef) coef = c;
        }
      }
      if (coef && *coef > best_coef) {
        best_coef = *coef;
        best_xi = &xi.curve;
      }
    }
    if (!best_xi) throw std::logic_error("pants_ratio_verify: measure with no positive coefficient");
    st.q = Rational(total_mass(eta)) / best_coef;
    std::int64_t cycle_mass = 0;
    for (const auto& xi : cycles[j]) cycle_mass += total_mass(xi.measure);
    if (st.q > Rational(cycle_mass)) rep.q_bound_ok = false;
    st.k_proof = Rational(intersection_number(rho.curve, *best_xi) * pants_intersection(at, *best_xi), rho_p);
    if (st.k_proof > Rational(2) * st.q * rep.k0) rep.coefficient_ok = false;
    rep.k_proof = std::max(rep.k_proof, st.k_proof);
    for (const auto& xi : cycles[j]) st.k0 = std::max(st.k0, check_residual(down[j].apply(xi.measure)));
    rep.k = std::max(rep.k, st.k);
    rep.q = std::max(rep.q, st.q);
    rep.stages.push_back(st);
  }
  if (rep.stages.empty()) throw TrackError("NoAdmissibleStage");

  KappaScan& ks = rep.kappa;
  for (int p = -20; p <= 20; ++p) ks.s_grid.push_back(p < 0 ? Rational(1, std::int64_t{1} << -p) : Rational(std::int64_t{1} << p));
  std::vector<KappaCandidate> cands;
  for (int j = 0; j <= m; ++j) {
    for (const auto& gm : cycles[j]) {
      cands.push_back({j, intersection_number(gm.curve, rho.curve), pants_intersection(at, gm.curve)});
    }
  }
  // Least k on a grid of step 1/8 admitting a nondecreasing stage selection.
  std::int64_t lo = 1, hi = 8;
  while (hi < (std::int64_t{1} << 40) && !monotone_selection(kappa_members(cands, ks.s_grid, rho_p, Rational(hi, 8)))) hi *= 2;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (monotone_selection(kappa_members(cands, ks.s_grid, rho_p, Rational(mid, 8)))) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  ks.k_used = std::max(Rational(hi, 8), rep.k);
  ks.stages = kappa_members(cands, ks.s_grid, rho_p, ks.k_used);
  ks.monotone = monotone_selection(ks.stages);
  ks.stage0_small = !ks.stages.front().empty() && ks.stages.front().front() == 0;
  ks.final_large = !ks.stages.back().empty() && ks.stages.back().back() == m;
  return rep;
}

std::vector<std::int64_t> combinatorial_type(const TrainTrack& t) {
  auto key = t.canonical().key;
  key.resize(2 * static_cast<std::size_t>(t.num_switches() + t.num_branches()));
  return key;
}

SplitClosure split_closure(const TrainTrack& t, int cap) {
  SplitClosure out;
  std::set<std::vector<std::int64_t>> seen{combinatorial_type(t)};
  out.tracks.push_back(t);
  out.depth.push_back(0);
  for (std::size_t i = 0; i < out.tracks.size(); ++i) {
    for (int e : out.tracks[i].large_branches()) {
      for (SplitDir dir : {SplitDir::Left, SplitDir::Right}) {
        TrainTrack next = split(out.tracks[i], {e, dir}).track;
        if (!seen.insert(combinatorial_type(next)).second) continue;
        if (static_cast<int>(out.tracks.size()) >= cap) {
          out.complete = false;
          return out;
        }
        out.tracks.push_back(std::move(next));
        out.depth.push_back(out.depth[i] + 1);
      }
    }
  }
  return out;
}

ClosureBounds closure_bounds(const SplitClosure& c) {
  ClosureBounds b;
  b.types = static_cast<int>(c.tracks.size());
  b.complete = c.complete;
  for (const auto& t : c.tracks) {
    const auto rays = extreme_ray_measures(t);
    std::int64_t sum = 0;
    for (const auto& r : rays) {
      b.max_cycle_mass = std::max(b.max_cycle_mass, total_mass(r));
      sum += total_mass(r);
    }
    b.max_vertex_cycles = std::max(b.max_vertex_cycles, static_cast<int>(rays.size()));
    b.max_cycle_mass_sum = std::max(b.max_cycle_mass_sum, sum);
  }
  return b;
}

std::vector<ConvergenceRow> convergence_diagnostic(const SplittingSequence& seq, const CurveGraphIndex& g) {
  const auto path = phi_path(seq);
  std::vector<ConvergenceRow> out;
  for (std::size_t j = 0; j < path.size(); ++j) {
    ConvergenceRow row;
    row.stage = static_cast<int>(j);
    const auto& c = path[j].coords();
    const std::int64_t sum = std::accumulate(c.begin(), c.end(), std::int64_t{0});
    for (int x : c) row.projective.emplace_back(x, sum);
    row.from_start = g.distance(path.front(), path[j]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace trk
