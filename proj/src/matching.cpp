#include "pairspec/matching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pairspec/errors.hpp"

namespace pairspec {

std::complex<double> complex_pearson(std::span<const std::complex<double>> u,
                                     std::span<const std::complex<double>> v) {
  if (u.size() != v.size()) throw IncompatibleTemplateError("correlation needs equally long vectors");
  if (u.size() < 2) throw DegenerateScoreError("correlation needs at least two elements");
  const double n = static_cast<double>(u.size());
  std::complex<double> mu, mv;
  double raw_u = 0.0, raw_v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
    raw_u += std::norm(u[i]);
    raw_v += std::norm(v[i]);
  }
  mu /= n;
  mv /= n;
  double re = 0.0, im = 0.0, var_u = 0.0, var_v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::complex<double> du = u[i] - mu;
    const std::complex<double> dv = v[i] - mv;
    // conj(du) * dv
    re += du.real() * dv.real() + du.imag() * dv.imag();
    im += du.real() * dv.imag() - du.imag() * dv.real();
    var_u += std::norm(du);
    var_v += std::norm(dv);
  }
  if (!(var_u > 1e-28 * raw_u) || !(var_v > 1e-28 * raw_v)) throw DegenerateScoreError("zero-variance template");
  const double denom = std::sqrt(var_u) * std::sqrt(var_v);
  return {re / denom, im / denom};
}

double score(const SpectralTemplate& f, const SpectralTemplate& f2) {
  if (!(f.grid == f2.grid) || f.variant != f2.variant) {
    throw IncompatibleTemplateError("templates differ in grid or variant");
  }
  return std::min(1.0, std::abs(complex_pearson(f.values.flat(), f2.values.flat())));
}

double fused_score(const SpectralTemplate& fx, const SpectralTemplate& fx2, const SpectralTemplate& ft,
                   const SpectralTemplate& ft2) {
  if (fx.variant != Variant::Location || ft.variant != Variant::LocationOrientation) {
    throw IncompatibleTemplateError("fusion expects a LOCATION and a LOCATION_ORIENTATION pair");
  }
  if (fx.grid.kind() != ft.grid.kind()) throw IncompatibleTemplateError("fusion expects one template family");
  return score(fx, fx2) + score(ft, ft2);
}

bool better_match(const MatchResult& candidate, const MatchResult& incumbent) noexcept {
  if (candidate.fused != incumbent.fused) return candidate.fused > incumbent.fused;
  const double a = std::abs(candidate.phi_opt);
  const double b = std::abs(incumbent.phi_opt);
  if (a != b) return a < b;
  return candidate.phi_opt < incumbent.phi_opt;
}

MatchResult match_with_rotation(const TemplatePair& enrolled, const TemplatePair& probe,
                                std::span<const double> angles) {
  if (angles.empty()) throw std::invalid_argument("angle list must be non-empty (use {0} to disable search)");
  MatchResult best;
  bool have = false;
  for (double phi : angles) {
    MatchResult r;
    if (phi == 0.0) {
      r.score_x = score(enrolled.location, probe.location);
      r.score_xtheta = score(enrolled.location_orientation, probe.location_orientation);
    } else {
      r.score_x = score(enrolled.location, transform_template(probe.location, phi));
      r.score_xtheta = score(enrolled.location_orientation, transform_template(probe.location_orientation, phi));
    }
    r.fused = r.score_x + r.score_xtheta;
    r.phi_opt = phi;
    if (!have || better_match(r, best)) {
      best = r;
      have = true;
    }
  }
  return best;
}

std::vector<double> rotation_angles(double max_deg, double step_deg) {
  if (!(step_deg > 0.0) || max_deg < 0.0) throw std::invalid_argument("rotation range needs max >= 0 and step > 0");
  const auto k = static_cast<int>(std::floor(max_deg / step_deg + 1e-9));
  std::vector<double> out;
  for (int i = -k; i <= k; ++i) out.push_back(deg_to_rad(i * step_deg));
  return out;
}

std::vector<double> rotation_off() { return {0.0}; }
std::vector<double> rotation_pm3_step1p5() { return rotation_angles(3.0, 1.5); }
std::vector<double> rotation_pm4p5_step1p5() { return rotation_angles(4.5, 1.5); }

}  // namespace pairspec
