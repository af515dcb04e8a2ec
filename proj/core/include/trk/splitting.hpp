#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trk/adapted.hpp"
#include "trk/curve_graph.hpp"
#include "trk/split.hpp"
#include "trk/vertex_cycles.hpp"

namespace trk {

enum class Halt { None, VertexCycle, MaxSteps, CentralTie, Rounds };

std::string_view to_string(Halt h);

/// tracks[i+1] = split(tracks[i], moves[i]) with carrying matrix matrices[i];
/// preimages[i] is the guide's measure on tracks[i].
struct SplittingSequence {
  std::vector<TrainTrack> tracks;
  std::vector<SplitMove> moves;
  std::vector<CarryingMatrix> matrices;
  Measure guide;
  std::vector<Measure> preimages;
  Halt halt = Halt::None;
  int rounds_completed = 0;
  std::vector<int> round_starts;  // move index at which each round began
};

/// Splits at the least large branch with positive guide weight whose
/// compatible direction is Left or Right, until the guide's preimage is a
/// vertex cycle, `max_steps` splits were made, or every such branch is tied.
/// Throws TrackError("NotCarried") / TrackError("NoLargeBranchWithMass").
SplittingSequence run_splitting_sequence(const TrainTrack& t0, const Measure& guide, int max_steps);

/// `rounds` rounds; each splits once at every large branch of the round's
/// first track, in canonical branch order. Branches with zero guide weight
/// are split to the left. A tie stops the sequence (halt = CentralTie).
SplittingSequence run_full_splitting_sequence(const TrainTrack& t0, const Measure& guide, int rounds);

/// The first m moves of the sequence.
SplittingSequence prefix(const SplittingSequence& seq, int m);

/// Checks that pushing each stage's preimage through the product of the
/// stage matrices gives back the guide exactly.
bool carrying_exact(const SplittingSequence& seq);

/// Phi of every track in the sequence.
std::vector<NormalCurve> phi_path(const SplittingSequence& seq);

struct LipschitzResult {
  int max_step = 0;
  bool certified = true;
  int steps = 0;
};

LipschitzResult lipschitz_check(const std::vector<NormalCurve>& phi, const CurveGraphIndex& g);

struct QuasigeodesicFit {
  Rational q_fit{1};
  int d_fellow = 0;
  bool certified = true;
  std::vector<NormalCurve> geodesic;
};

/// D: largest distance from a path point to a geodesic between the endpoints.
/// Q: least L (on a grid of step 1/8) admitting nondecreasing times t_i with
/// d/L - L <= t_j - t_i <= L d + L for all i < j.
QuasigeodesicFit quasigeodesic_fit(const std::vector<NormalCurve>& path, const CurveGraphIndex& g);

/// Least L on the grid {1, 9/8, 10/8, ...} up to `max_l` for which the
/// distance matrix admits a quasigeodesic reparametrization, or nullopt.
std::optional<Rational> min_quasigeodesic_constant(const std::vector<std::vector<int>>& d, Rational max_l);

struct StageReport {
  int stage = 0;
  Rational k;        // min over vertex cycles alpha of i(rho, alpha) i(P, alpha) / i(rho, P)
  int alpha = -1;    // minimizing vertex cycle index
  Rational q;        // mass(eta) / max coefficient
  Rational k_proof;  // the ratio for the vertex cycle with the largest coefficient
  Rational k0;       // worst residual ratio among this stage's vertex cycles
};

struct KappaScan {
  std::vector<Rational> s_grid;
  std::vector<std::vector<int>> stages;  // per s, stages with a member of L_s(rho, P, k)
  bool stage0_small = false;
  bool final_large = false;
  bool monotone = false;
  Rational k_used;
};

struct PantsRatioReport {
  std::vector<StageReport> stages;  // admissible stages only
  Rational k;                       // max over admissible stages
  Rational k_proof;
  Rational k0;                      // supremum over the residual cone
  Rational q;
  bool residual_ok = true;
  bool coefficient_ok = true;       // k_proof <= 2 q k0 at every stage
  bool q_bound_ok = true;           // q <= total vertex-cycle mass at every stage
  KappaScan kappa;
};

/// Throws TrackError("NoAdmissibleStage") when no stage passes the filter.
PantsRatioReport pants_ratio_verify(const AdaptedTrack& at, const SplittingSequence& seq, const VertexCycle& rho,
                             const CurveGraphIndex& g);

/// mass(mu0) / sum_i i(c, gamma_i) for a measure on the adapted track;
/// checks the decomposition identities on the way (throws TrackError).
Rational residual_ratio(const AdaptedTrack& at, const Measure& mu);

/// Supremum of the residual ratio over the cone of residual measures.
Rational residual_ratio_sup(const AdaptedTrack& at);

/// One track per combinatorial type reachable from t by left and right
/// splits, breadth first. `complete` is false when `cap` types were reached
/// before the search closed up.
struct SplitClosure {
  std::vector<TrainTrack> tracks;
  std::vector<int> depth;
  bool complete = true;
};

SplitClosure split_closure(const TrainTrack& t, int cap);

/// Combinatorial part of the canonical key (switch sides only, no realization).
std::vector<std::int64_t> combinatorial_type(const TrainTrack& t);

struct ClosureBounds {
  int types = 0;
  bool complete = true;
  int max_vertex_cycles = 0;
  std::int64_t max_cycle_mass = 0;
  /// Largest total mass of all vertex cycles of one track. Any measure
  /// eta = sum a_i xi_i has some a_i >= eta(t) / this.
  std::int64_t max_cycle_mass_sum = 0;
};

ClosureBounds closure_bounds(const SplitClosure& c);

struct ConvergenceRow {
  int stage = 0;
  std::vector<Rational> projective;  // Phi coordinates normalized to sum 1
  Distance from_start;
};

std::vector<ConvergenceRow> convergence_diagnostic(const SplittingSequence& seq, const CurveGraphIndex& g);

}  // namespace trk
