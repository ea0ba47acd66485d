#include "pairspec/cost.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "pairspec/baseline.hpp"
#include "pairspec/errors.hpp"
#include "pairspec/evaluation.hpp"
#include "pairspec/matching.hpp"
#include "pairspec/synthgen.hpp"

namespace pairspec {

void CostModel::validate() const {
  if (!(n_grid > 0 && z > 0 && n_phi > 0 && t_sum > 0 && t_rot > 0 && c_score > 0)) {
    throw std::invalid_argument("cost model fields must be positive");
  }
  if (!(t_rot < t_sum)) throw std::invalid_argument("cost model needs t_rot < t_sum");
}

double summation_terms(const CostModel& m, bool pair_based) {
  if (pair_based && m.z < 2) throw std::invalid_argument("pair-based cost needs z >= 2");
  return pair_based ? m.n_grid * (m.z * (m.z - 1) / 2.0) : m.n_grid * m.z;
}

double summation_terms_per_minutia(const CostModel& m, bool pair_based) {
  return summation_terms(m, pair_based) / m.z;
}

double verification_cost(const CostModel& m, bool pair_based) {
  return summation_terms(m, pair_based) * m.t_sum + (m.n_phi - 1) * m.n_grid * m.t_rot + m.n_phi * m.c_score * m.n_grid;
}

namespace {

template <typename Fn>
double median_seconds(int warmup, int repeats, Fn&& fn) {
  for (int i = 0; i < warmup; ++i) fn();
  std::vector<double> times;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t n = times.size();
  return n % 2 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  if (config.repeats < 1 || config.warmup < 0) throw UsageError("bench needs repeats >= 1 and warmup >= 0");
  MinutiaSet enrolled, probe;
  if (config.database) {
    const FingerprintDb db = load_database(*config.database);
    std::vector<const MinutiaSet*> sets;
    for (const Finger& f : db) {
      for (const FingerImage& img : f.images) sets.push_back(&img.minutiae);
    }
    if (sets.empty()) throw UsageError("bench database is empty: " + config.database->string());
    enrolled = *sets[0];
    probe = sets.size() > 1 ? *sets[1] : *sets[0];
  } else {
    enrolled = generate_finger(config.seed, config.z, config.width, config.height);
    probe = perturb(enrolled, SynthProfile::desk_scale().noise, derive_seed(config.seed, 1));
  }

  const GridSpec grid = default_grid(Family::M, Variant::LocationOrientation, config.profile);
  const BaselineGrid bgrid = default_baseline_grid();
  const auto pairs = admissible_pairs(enrolled);

  BenchReport r;
  r.z = enrolled.size();
  r.grid_m = grid.point_count();
  r.grid_g = bgrid.point_count();
  // Each unordered pair is evaluated once for both directions.
  const auto unordered = std::count_if(pairs.pairs.begin(), pairs.pairs.end(), [](const MinutiaPair& p) { return p.a < p.b; });
  r.ops_m = static_cast<std::uint64_t>(unordered) * r.grid_m;
  r.ops_g = static_cast<std::uint64_t>(enrolled.size()) * r.grid_g;

  SpectralTemplate m_enrolled = compute_M(enrolled, Variant::LocationOrientation, grid);
  SpectralTemplate m_probe = compute_M(probe, Variant::LocationOrientation, grid);
  BaselineTemplate g_enrolled = compute_G(enrolled, bgrid);
  BaselineTemplate g_probe = compute_G(probe, bgrid);

  r.median_compute_m_s = median_seconds(config.warmup, config.repeats,
                                        [&] { m_probe = compute_M(probe, Variant::LocationOrientation, grid); });
  r.median_compute_g_s = median_seconds(config.warmup, config.repeats, [&] { g_probe = compute_G(probe, bgrid); });
  volatile double sink = 0;
  r.median_score_m_s = median_seconds(config.warmup, config.repeats, [&] { sink = score(m_enrolled, m_probe); });
  const int zero = 0;
  r.median_score_g_s = median_seconds(config.warmup, config.repeats,
                                      [&] { sink = baseline_match(g_probe.values, g_enrolled.values, {&zero, 1}).score; });
  (void)sink;

  r.model_m = {static_cast<double>(r.grid_m), static_cast<double>(r.z), static_cast<double>(config.n_phi), 1.0, 0.5, 0.1};
  r.model_g = {static_cast<double>(r.grid_g), static_cast<double>(r.z), static_cast<double>(config.n_phi), 1.0, 0.5, 0.1};
  return r;
}

std::string format_bench(const BenchReport& r) {
  std::string out;
  char buf[256];
  auto line = [&](const char* f, auto... args) {
    std::snprintf(buf, sizeof buf, f, args...);
    out += buf;
  };
  line("z %zu\n", r.z);
  line("grid_points M=%zu G=%zu\n", r.grid_m, r.grid_g);
  line("ops M=%llu G=%llu\n", static_cast<unsigned long long>(r.ops_m), static_cast<unsigned long long>(r.ops_g));
  line("analytic_terms pair_based=%.17g baseline=%.17g\n", summation_terms(r.model_m, true),
       summation_terms(r.model_g, false));
  line("analytic_terms_per_minutia pair_based=%.17g baseline=%.17g\n", summation_terms_per_minutia(r.model_m, true),
       summation_terms_per_minutia(r.model_g, false));
  line("analytic_cost n_phi=%.17g pair_based=%.17g baseline=%.17g\n", r.model_m.n_phi, verification_cost(r.model_m, true),
       verification_cost(r.model_g, false));
  line("median_seconds compute_M=%.6g compute_G=%.6g score_M=%.6g score_G=%.6g\n", r.median_compute_m_s,
       r.median_compute_g_s, r.median_score_m_s, r.median_score_g_s);
  return out;
}

}  // namespace pairspec
