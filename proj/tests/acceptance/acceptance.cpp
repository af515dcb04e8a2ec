// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "trk/enumerate.hpp"
#include "trk/experiment.hpp"
#include "trk/intersection.hpp"
#include "trk/overlay.hpp"

using namespace trk;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  | " << detail << std::endl;
  if (!ok) ++failures;
}

std::string counts(const CheckResult& c) {
  std::ostringstream s;
  s << c.name << " checked=" << c.checked << " violations=" << c.violations << " truncated=" << c.truncated;
  if (!c.detail.empty()) s << " (" << c.detail << ")";
  return s.str();
}

ExperimentConfig config(const std::string& surface, std::uint64_t seed) {
  ExperimentConfig c;
  c.surface = surface;
  c.seed = seed;
  c.vcycle_tracks = 150;
  c.mass_bound_measures = 600;
  return c;
}

RunReport run(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport r = verify_all(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "ran " << cfg.surface << " seed " << cfg.seed << " in " << static_cast<int>(secs) << " s" << std::endl;
  return r;
}

struct IntersectionStats {
  long symmetric = 0, asymmetric = 0;
  long additive = 0, nonadditive = 0;
  long oracle_agree = 0, oracle_disagree = 0;
};

void intersection_sweep(const ChartPtr& chart, std::uint64_t seed, IntersectionStats& st) {
  const auto curves = enumerate_curves(chart, 4);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, curves.size() - 1);
  std::uniform_int_distribution<int> mult(1, 3);
  for (int k = 0; k < 300; ++k) {
    const auto& a = curves[pick(rng)];
    const auto& b = curves[pick(rng)];
    const std::int64_t ab = intersection_number(a, b);
    (ab == intersection_number(b, a) ? st.symmetric : st.asymmetric) += 1;
    if (k < 150) (ab == overlay_intersection(a, b) ? st.oracle_agree : st.oracle_disagree) += 1;

    // m a + c for a curve c disjoint from a
    std::vector<const NormalCurve*> partners;
    for (const auto& c : curves) {
      if (!(c == a) && intersection_number(a, c) == 0) partners.push_back(&c);
    }
    if (partners.empty()) continue;
    const NormalCurve& c = *partners[std::uniform_int_distribution<std::size_t>(0, partners.size() - 1)(rng)];
    const int m = mult(rng);
    Coords sum(a.coords().size());
    for (std::size_t e = 0; e < sum.size(); ++e) sum[e] = m * a.coords()[e] + c.coords()[e];
    const MultiCurve mc = MultiCurve::from_coords(chart, sum);
    const bool ok = intersection_number(mc, b) == m * ab + intersection_number(c, b) &&
                    intersection_number(b, mc) == intersection_number(mc, b);
    (ok ? st.additive : st.nonadditive) += 1;
  }
}

}  // namespace

int main() {
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  std::vector<RunReport> s05;
  for (auto s : seeds) s05.push_back(run(config("s05", s)));
  ExperimentConfig c12 = config("s12", 1);
  c12.pants_sequences = 0;
  const RunReport s12 = run(c12);
  std::cout << std::endl;

  {
    const CheckResult& a = s05[0].check("vcycle_trainpath");
    const CheckResult& b = s12.check("vcycle_trainpath");
    report(1, "extreme rays = trainpath characterization",
           a.checked + b.checked >= 200 && a.ok() && b.ok(), "s05 " + counts(a) + "; s12 " + counts(b));
  }
  {
    const CheckResult& a = s05[0].check("mass_bound");
    const CheckResult& b = s12.check("mass_bound");
    report(2, "i(c_mu, xi) <= 2 mu(tau)", a.checked + b.checked >= 1000 && a.ok() && b.ok(),
           "s05 " + counts(a) + "; s12 " + counts(b));
  }
  {
    const CheckResult& a = s05[0].check("distance_bound");
    report(3, "d <= 2 i + 1 on the bound-4 universe of S05", a.ok() && a.checked > 0, counts(a));
  }
  {
    bool ok = true;
    std::set<int> values;
    std::string detail;
    for (const auto& r : s05) {
      const auto& k = r.constants;
      ok = ok && r.check("lipschitz").ok() && k.C_certified && k.C_samples >= 500;
      values.insert(k.C_lipschitz);
      detail += "seed " + std::to_string(k.seed) + ": C*=" + std::to_string(k.C_lipschitz) +
                " splits=" + std::to_string(k.C_samples) + (k.C_certified ? "" : " uncertified") + "; ";
    }
    report(4, "single-split Lipschitz constant C* stable across seeds", ok && values.size() == 1, detail);
  }
  {
    bool ok = true;
    std::set<int> d;
    Rational q_max{0};
    std::string detail;
    for (const auto& r : s05) {
      const auto& k = r.constants;
      ok = ok && r.check("fellow_travel").ok() && k.fellow_samples >= 50;
      d.insert(k.D_fellow_travel);
      q_max = std::max(q_max, k.Q_fit);
      detail += "seed " + std::to_string(k.seed) + ": D*=" + std::to_string(k.D_fellow_travel) +
                " Q_fit=" + rational_string(k.Q_fit) + " n=" + std::to_string(k.fellow_samples) +
                " skipped=" + std::to_string(k.fellow_skipped) + "; ";
    }
    // uniform bound asserted on Q_fit: 2
    report(5, "fellow travelling D* stable, Q_fit bounded", ok && d.size() == 1 && q_max <= Rational(2), detail);
  }
  {
    bool ok = true;
    std::set<std::string> k0, q;
    std::string detail;
    for (const auto& r : s05) {
      const auto& k = r.constants;
      ok = ok && r.check("pants_ratio").ok() && k.pants_samples >= 30 && r.check("la_scan").ok();
      k0.insert(rational_string(k.k0_pants));
      q.insert(std::to_string(k.q_vcycle_decomp));
      ok = ok && k.k0_witnessed <= k.k0_pants && k.q_witnessed <= Rational(k.q_vcycle_decomp);
      detail += "seed " + std::to_string(k.seed) + ": n=" + std::to_string(k.pants_samples) +
                " k=" + rational_string(k.k_pants) + " k_proof=" + rational_string(k.k_proof) +
                " k0=" + rational_string(k.k0_pants) + " (witnessed " + rational_string(k.k0_witnessed) +
                ") q=" + std::to_string(k.q_vcycle_decomp) + " (witnessed " + rational_string(k.q_witnessed) +
                ") kappa_k=" + rational_string(k.kappa_k) + " discarded=" + std::to_string(k.pants_discarded) + "; ";
    }
    report(6, "pants ratio k finite, k0 and q seed-stable, kappa scan covers both ends",
           ok && k0.size() == 1 && q.size() == 1, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (const auto& r : s05) {
      ok = ok && r.check("carrying").ok() && r.check("structure").ok();
      detail += counts(r.check("carrying")) + "; ";
    }
    report(7, "carrying matrices reproduce the guide; vertex-cycle pushforwards are curves", ok, detail);
  }
  {
    IntersectionStats st;
    intersection_sweep(chart_s05(), 1, st);
    intersection_sweep(chart_s12(), 2, st);
    std::ostringstream s;
    s << "symmetric " << st.symmetric << "/" << st.symmetric + st.asymmetric << ", additive " << st.additive << "/"
      << st.additive + st.nonadditive << ", oracle agreement " << st.oracle_agree << "/"
      << st.oracle_agree + st.oracle_disagree;
    const bool ok = st.asymmetric == 0 && st.nonadditive == 0 && st.oracle_disagree == 0 &&
                    st.symmetric >= 500 && st.additive >= 500 && st.oracle_agree >= 100;
    report(8, "intersection symmetry, bilinearity, bigon-oracle agreement", ok, s.str());
  }
  {
    bool ok = s12.check("structure").ok();
    std::string detail = "s12 " + counts(s12.check("structure")) + "; ";
    for (const auto& r : s05) {
      ok = ok && r.check("structure").ok();
      detail += "s05 seed " + std::to_string(r.config.seed) + " " + counts(r.check("structure")) + "; ";
    }
    detail += "closure max vertex cycles s05=" + std::to_string(s05[0].constants.max_vertex_cycles) +
              " s12=" + std::to_string(s12.constants.max_vertex_cycles);
    report(9, "complete-track counts and vertex-cycle bounds", ok, detail);
  }

  std::cout << std::endl << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
