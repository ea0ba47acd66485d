#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "pairspec/spectral.hpp"

namespace pairspec {

/// Analytic verification cost: computing the probe spectrum, N_φ - 1 rotation
/// transforms and N_φ scores.
struct CostModel {
  double n_grid = 0;   ///< grid points N_gr
  double z = 0;        ///< minutiae Z
  double n_phi = 1;    ///< rotation attempts N_φ
  double t_sum = 1.0;  ///< cost per summation term per grid point
  double t_rot = 0.5;  ///< cost per rotation transform per grid point
  double c_score = 0.1;

  /// Throws std::invalid_argument unless all fields are positive and t_rot < t_sum.
  void validate() const;
};

/// Number of summation terms in the first cost term: N_gr * Z for the
/// single-minutia baseline, N_gr * Z(Z-1)/2 for the pair-based method.
double summation_terms(const CostModel& m, bool pair_based);

/// summation_terms divided by Z: N_gr versus N_gr (Z-1)/2.
double summation_terms_per_minutia(const CostModel& m, bool pair_based);

/// N_gr Z T_s + (N_φ - 1) N_gr T_rot + N_φ c N_gr, with Z(Z-1)/2 in place of
/// Z when pair_based. Throws std::invalid_argument when pair_based and z < 2.
double verification_cost(const CostModel& m, bool pair_based);

struct BenchConfig {
  RadialProfile profile = RadialProfile::Verifinger;
  int z = 35;
  int width = 326;
  int height = 357;
  int repeats = 5;
  int warmup = 1;
  int n_phi = 11;
  std::uint64_t seed = 1;
  /// When set, the first two images of this database are used instead of
  /// synthetic minutiae; an empty database is a UsageError.
  std::optional<std::filesystem::path> database;
};

struct BenchReport {
  double median_compute_m_s = 0;  ///< M_xθ template, seconds
  double median_compute_g_s = 0;  ///< baseline G template, seconds
  double median_score_m_s = 0;
  double median_score_g_s = 0;
  std::uint64_t ops_m = 0;  ///< summation terms evaluated for M (unordered pairs x grid points)
  std::uint64_t ops_g = 0;  ///< summation terms evaluated for G (minutiae x grid points)
  std::size_t grid_m = 0;
  std::size_t grid_g = 0;
  std::size_t z = 0;
  CostModel model_m;
  CostModel model_g;
};

BenchReport run_bench(const BenchConfig& config);
std::string format_bench(const BenchReport& report);

}  // namespace pairspec
