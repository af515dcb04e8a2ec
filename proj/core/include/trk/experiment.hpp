#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trk/serialization.hpp"
#include "trk/splitting.hpp"

namespace trk {

struct ExperimentConfig {
  std::string surface = "s05";
  int bound = 4;             // universe coordinate bound
  int cap = 8;               // BFS radius cap
  int max_steps = 60;        // guided sequence length limit
  int guide_weight = 10;     // coefficients of vertex cycles in short guides
  int vcycle_tracks = 100;
  int mass_bound_measures = 500;
  int lipschitz_splits = 500;
  int fellow_sequences = 50;
  int pants_sequences = 30;
  std::int64_t pants_guide_weight = 1000000;
  int pants_rounds = 20;
  int pants_extra_stages = 5;  // stages kept past the first admissible one
  int closure_cap = 20000;
  int delta_triangles = 200;
  std::uint64_t seed = 1;
  int workers = 1;

  /// Throws std::invalid_argument("ConfigInvalid: ...").
  void validate() const;
};

/// Independent stream for task `task` of an experiment seeded with `seed`.
std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task);

/// A named exact check. `truncated` counts cases that could not be decided
/// (uncertified distances) and are neither passes nor violations.
struct CheckResult {
  std::string name;
  long checked = 0;
  long violations = 0;
  long truncated = 0;
  std::string detail;

  [[nodiscard]] bool ok() const { return violations == 0; }
};

/// Measured stand-ins for the unnamed constants, with sample metadata.
struct ConstantsReport {
  std::string surface;
  std::uint64_t seed = 0;
  int D_vcycle_diam = 0;      // over tracks of the short guided sequences
  int C_lipschitz = 0;
  bool C_certified = true;
  long C_samples = 0;
  Rational Q_fit{0};
  int D_fellow_travel = 0;
  long fellow_samples = 0;
  long fellow_skipped = 0;
  Rational delta_estimate{0};
  int delta_triangles = 0;
  Rational k_pants{0};
  Rational k_proof{0};
  Rational k0_pants{0};       // supremum over the residual cone of the adapted track
  Rational k0_witnessed{0};
  std::int64_t q_vcycle_decomp = 0;  // largest total vertex-cycle mass over the split closure
  Rational q_witnessed{0};
  Rational kappa_k{0};
  long pants_samples = 0;
  long pants_discarded = 0;  // sequences with no admissible stage
  int closure_types = 0;
  bool closure_complete = true;
  int max_vertex_cycles = 0;   // over the split closure
};

struct RunReport {
  ExperimentConfig config;
  ConstantsReport constants;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, double>> timing;  // seconds per phase

  [[nodiscard]] const CheckResult& check(const std::string& name) const;
  [[nodiscard]] bool ok() const;
};

/// Runs, in order: split closure bounds, vertex-cycle cross-validation,
/// intersection mass bound sweep, 2i+1 distance bound, Lipschitz sweep, fellow
/// travelling sweep, pants-ratio measurement, L_a scan, structural counts and
/// carrying exactness. Deterministic in the seed for any worker count.
RunReport verify_all(const ExperimentConfig& cfg);

Json report_to_json(const RunReport& r);
/// name,checked,violations,truncated rows followed by constant,value rows.
std::string report_to_csv(const RunReport& r);

/// "s05-chart", "s12-chart", "s05-adapted", "s12-adapted", "s05-pants",
/// "s12-pants". Throws std::invalid_argument("UnknownFixture: ...").
Json emit_fixture(const std::string& name);

/// Random guide on the track: a nonnegative integral combination of vertex
/// cycles with coefficients in [0, weight], redrawn until its trainpath is
/// a single nonzero cycle (when `connected`).
Measure random_guide(const TrainTrack& t, const std::vector<VertexCycle>& cycles, std::int64_t weight,
                     bool connected, std::mt19937_64& rng);

}  // namespace trk
