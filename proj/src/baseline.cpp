#include "pairspec/baseline.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>

#include "pairspec/errors.hpp"

namespace pairspec {

const char* to_string(BaselineVariant v) noexcept { return v == BaselineVariant::Plain ? "PLAIN" : "ORIENTATION"; }

BaselineVariant baseline_variant_from_string(const std::string& s) {
  if (s == "PLAIN") return BaselineVariant::Plain;
  if (s == "ORIENTATION") return BaselineVariant::Orientation;
  throw std::invalid_argument("unknown baseline variant '" + s + "'");
}

BaselineGrid default_baseline_grid(std::size_t alpha_count, std::size_t beta_count, double sigma) {
  if (alpha_count == 0 || beta_count == 0) throw std::invalid_argument("baseline grid dimensions must be positive");
  BaselineGrid grid;
  const double lo = std::log(kBaselineKMin);
  const double hi = std::log(kBaselineKMax);
  grid.alpha_values.resize(alpha_count);
  for (std::size_t i = 0; i < alpha_count; ++i) {
    grid.alpha_values[i] = alpha_count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (alpha_count - 1);
  }
  grid.beta_values.resize(beta_count);
  for (std::size_t j = 0; j < beta_count; ++j) grid.beta_values[j] = kTwoPi * static_cast<double>(j) / beta_count;
  grid.sigma = sigma;
  return grid;
}

BaselineTemplate compute_G(const MinutiaSet& set, const BaselineGrid& grid, BaselineVariant variant) {
  if (set.empty()) throw InsufficientMinutiaeError("baseline spectrum needs at least one minutia");
  BaselineTemplate t{grid, variant, Matrix<double>(grid.alpha_values.size(), grid.beta_values.size())};
  std::vector<double> cos_b(grid.beta_values.size()), sin_b(grid.beta_values.size());
  for (std::size_t j = 0; j < grid.beta_values.size(); ++j) {
    cos_b[j] = std::cos(grid.beta_values[j]);
    sin_b[j] = std::sin(grid.beta_values[j]);
  }
  for (std::size_t i = 0; i < grid.alpha_values.size(); ++i) {
    const double k = std::exp(grid.alpha_values[i]);
    const double damping = std::exp(-0.5 * grid.sigma * grid.sigma * k * k);
    for (std::size_t j = 0; j < grid.beta_values.size(); ++j) {
      const double kx = k * cos_b[j];
      const double ky = k * sin_b[j];
      double re = 0.0, im = 0.0;
      for (const Minutia& m : set.minutiae()) {
        double phase = -(kx * m.x + ky * m.y);
        if (variant == BaselineVariant::Orientation) phase += m.theta;
        re += std::cos(phase);
        im += std::sin(phase);
      }
      t.values(i, j) = damping * std::hypot(re, im);
    }
  }
  return t;
}

double pearson(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw IncompatibleTemplateError("correlation needs equally long vectors");
  if (u.size() < 2) throw DegenerateScoreError("correlation needs at least two elements");
  const double n = static_cast<double>(u.size());
  double mu = 0.0, mv = 0.0, su2 = 0.0, sv2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
    su2 += u[i] * u[i];
    sv2 += v[i] * v[i];
  }
  mu /= n;
  mv /= n;
  double cuv = 0.0, cuu = 0.0, cvv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    cuv += du * dv;
    cuu += du * du;
    cvv += dv * dv;
  }
  // Variance below rounding level of the raw second moment counts as zero.
  if (!(cuu > 1e-28 * su2) || !(cvv > 1e-28 * sv2)) throw DegenerateScoreError("zero-variance vector");
  return cuv / std::sqrt(cuu * cvv);
}

BaselineMatch baseline_match(const Matrix<double>& g, const Matrix<double>& g_ref, std::span<const int> shifts) {
  if (g.rows() != g_ref.rows() || g.cols() != g_ref.cols()) {
    throw IncompatibleTemplateError("baseline templates differ in shape");
  }
  if (shifts.empty()) throw std::invalid_argument("shift list must be non-empty");
  const auto cols = static_cast<long>(g.cols());
  Matrix<double> shifted(g.rows(), g.cols());
  BaselineMatch best;
  bool have = false;
  for (int s : shifts) {
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (long j = 0; j < cols; ++j) {
        long src = (j + s) % cols;
        if (src < 0) src += cols;
        shifted(i, static_cast<std::size_t>(j)) = g(i, static_cast<std::size_t>(src));
      }
    }
    const double score = pearson(g_ref.flat(), shifted.flat());
    const bool better = !have || score > best.score ||
                        (score == best.score && (std::abs(s) < std::abs(best.shift) ||
                                                 (std::abs(s) == std::abs(best.shift) && s < best.shift)));
    if (better) {
      best = {score, s};
      have = true;
    }
  }
  return best;
}

}  // namespace pairspec
