#include "pairspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pairspec/errors.hpp"

namespace pairspec {

const char* to_string(Family f) noexcept { return f == Family::L ? "L" : "M"; }

const char* to_string(GridKind k) noexcept {
  return k == GridKind::LogPolarFreq ? "LOG_POLAR_FREQ" : "RADIAL_DIRECT";
}

const char* to_string(Variant v) noexcept {
  return v == Variant::Location ? "LOCATION" : "LOCATION_ORIENTATION";
}

Family family_from_string(const std::string& s) {
  if (s == "L") return Family::L;
  if (s == "M") return Family::M;
  throw std::invalid_argument("unknown family '" + s + "'");
}

Variant variant_from_string(const std::string& s) {
  if (s == "LOCATION") return Variant::Location;
  if (s == "LOCATION_ORIENTATION") return Variant::LocationOrientation;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

std::vector<double> linspace(double first, double last, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = first;
    return out;
  }
  const double step = (last - first) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = first + step * static_cast<double>(i);
  out.back() = last;
  return out;
}

GridSpec::GridSpec(GridKind kind, std::vector<int> q_values, std::vector<double> radial_values, double sigma)
    : kind_(kind), q_(std::move(q_values)), radial_(std::move(radial_values)), sigma_(sigma) {
  if (q_.empty() || radial_.empty()) throw std::invalid_argument("grid axes must be non-empty");
  std::set<int> seen;
  for (int q : q_) {
    if (q == 0) throw std::invalid_argument("q values must be nonzero");
    if (!seen.insert(q).second) throw std::invalid_argument("q values must be distinct");
  }
  for (std::size_t i = 0; i < radial_.size(); ++i) {
    if (!std::isfinite(radial_[i])) throw std::invalid_argument("radial values must be finite");
    if (i > 0 && !(radial_[i] > radial_[i - 1])) {
      throw std::invalid_argument("radial values must be strictly increasing");
    }
  }
  if (kind_ == GridKind::RadialDirect && !(sigma_ > 0.0)) {
    throw std::invalid_argument("sigma must be positive on a RADIAL_DIRECT grid");
  }
}

GridSpec default_grid(Family family, Variant variant, RadialProfile profile) {
  const bool even_only = variant == Variant::Location;
  std::vector<int> q;
  if (family == Family::L) {
    for (int v = -24; v <= 24; ++v) {
      if (v == 0 || (even_only && v % 2 != 0)) continue;
      q.push_back(v);
    }
    return GridSpec(GridKind::LogPolarFreq, std::move(q), linspace(0.2, 37.7, 32));
  }
  for (int v = 1; v <= 16; ++v) {
    if (even_only && v % 2 != 0) continue;
    q.push_back(v);
  }
  auto radial = profile == RadialProfile::Mcyt ? linspace(16.0, 130.0, 20) : linspace(16.0, 160.0, 25);
  return GridSpec(GridKind::RadialDirect, std::move(q), std::move(radial), kDefaultSigma);
}

GridSpec default_grid(Family family, Variant variant, int image_width) {
  return default_grid(family, variant, image_width >= kVerifingerWidth ? RadialProfile::Verifinger : RadialProfile::Mcyt);
}

namespace {

// Plain complex product; std::complex's operator* carries NaN recovery we do
// not need on unit-modulus terms.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

AdmissiblePairs require_pairs(const MinutiaSet& set, const SpectralOptions& options) {
  AdmissiblePairs pairs = admissible_pairs(set, options.weight);
  if (pairs.pairs.empty()) {
    throw InsufficientMinutiaeError("no admissible minutia pairs (Z=" + std::to_string(set.size()) + ")");
  }
  return pairs;
}

// An ordered pair (a,b) together with the weight of its reverse (b,a), which
// shares r and has phi + pi, so e^{iq phi_ba} = (-1)^q e^{iq phi_ab} and the
// orientation phase flips sign. Summing both directions from one geometry
// keeps the conjugate symmetries exact.
struct PairTerm {
  const MinutiaPair* forward;
  double reverse_weight;
};

std::vector<PairTerm> pair_terms(const AdmissiblePairs& pairs) {
  const auto& ps = pairs.pairs;
  auto find = [&](std::size_t a, std::size_t b) -> const MinutiaPair* {
    auto it = std::lower_bound(ps.begin(), ps.end(), std::pair{a, b},
                               [](const MinutiaPair& p, const std::pair<std::size_t, std::size_t>& k) {
                                 return std::pair{p.a, p.b} < k;
                               });
    return it != ps.end() && it->a == a && it->b == b ? &*it : nullptr;
  };
  std::vector<PairTerm> out;
  out.reserve(ps.size() / 2 + 1);
  for (const MinutiaPair& p : ps) {
    const MinutiaPair* rev = find(p.b, p.a);
    if (p.a < p.b) {
      out.push_back({&p, rev ? rev->weight : 0.0});
    } else if (!rev) {
      out.push_back({&p, 0.0});
    }
  }
  return out;
}

double orientation_phase(const MinutiaSet& set, const MinutiaPair& p, Variant variant) {
  return variant == Variant::LocationOrientation ? set[p.a].theta - set[p.b].theta : 0.0;
}

// wf e^{i(q phi + d)} + wr (-1)^q e^{i(q phi - d)} for every q.
void fill_angular(std::vector<Complex>& angular, const std::vector<int>& qs, const PairTerm& t, double d) {
  const double phi = t.forward->geometry.phi;
  const double wf = t.forward->weight;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double base = qs[i] * phi;
    Complex v = std::polar(wf, base + d);
    if (t.reverse_weight != 0.0) v += std::polar(qs[i] % 2 == 0 ? t.reverse_weight : -t.reverse_weight, base - d);
    angular[i] = v;
  }
}

}  // namespace

SpectralTemplate compute_L(const MinutiaSet& set, Variant variant, const GridSpec& grid,
                           const SpectralOptions& options) {
  if (grid.kind() != GridKind::LogPolarFreq) throw std::invalid_argument("compute_L needs a LOG_POLAR_FREQ grid");
  const AdmissiblePairs pairs = require_pairs(set, options);
  const auto& qs = grid.q_values();
  const auto& ws = grid.radial_values();

  SpectralTemplate t{grid, variant, Matrix<Complex>(qs.size(), ws.size())};
  std::vector<Complex> angular(qs.size());
  std::vector<Complex> radial(ws.size());
  for (const PairTerm& term : pair_terms(pairs)) {
    const MinutiaPair& p = *term.forward;
    fill_angular(angular, qs, term, orientation_phase(set, p, variant));
    const double log_r = std::log(p.geometry.r);
    for (std::size_t j = 0; j < ws.size(); ++j) radial[j] = std::polar(1.0, ws[j] * log_r);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      auto row = t.values.row(i);
      for (std::size_t j = 0; j < ws.size(); ++j) row[j] += mul(angular[i], radial[j]);
    }
  }
  return t;
}

SpectralTemplate compute_M(const MinutiaSet& set, Variant variant, const GridSpec& grid,
                           const SpectralOptions& options) {
  if (grid.kind() != GridKind::RadialDirect) throw std::invalid_argument("compute_M needs a RADIAL_DIRECT grid");
  const AdmissiblePairs pairs = require_pairs(set, options);
  const auto& qs = grid.q_values();
  const auto& rs = grid.radial_values();
  const double two_sigma_sq = 2.0 * grid.sigma() * grid.sigma();
  const double cutoff = 6.0 * grid.sigma();

  SpectralTemplate t{grid, variant, Matrix<Complex>(qs.size(), rs.size())};
  std::vector<Complex> angular(qs.size());
  std::vector<double> gauss(rs.size());
  std::vector<bool> active(rs.size(), true);
  for (const PairTerm& term : pair_terms(pairs)) {
    const MinutiaPair& p = *term.forward;
    fill_angular(angular, qs, term, orientation_phase(set, p, variant));
    for (std::size_t j = 0; j < rs.size(); ++j) {
      const double d = rs[j] - p.geometry.r;
      active[j] = !options.truncate_gaussian || std::abs(d) <= cutoff;
      gauss[j] = std::exp(-d * d / two_sigma_sq);
    }
    for (std::size_t i = 0; i < qs.size(); ++i) {
      auto row = t.values.row(i);
      for (std::size_t j = 0; j < rs.size(); ++j) {
        if (active[j]) row[j] += angular[i] * gauss[j];
      }
    }
  }
  return t;
}

SpectralTemplate compute_template(const MinutiaSet& set, Variant variant, const GridSpec& grid,
                                  const SpectralOptions& options) {
  return grid.kind() == GridKind::LogPolarFreq ? compute_L(set, variant, grid, options)
                                               : compute_M(set, variant, grid, options);
}

SpectralTemplate transform_template(const SpectralTemplate& t, double phi, double lambda) {
  if (!(lambda > 0.0)) throw UnsupportedTransformError("scale factor must be positive");
  const bool scaled = lambda != 1.0;
  if (scaled && t.grid.kind() == GridKind::RadialDirect) {
    throw UnsupportedTransformError("M templates have no scaling law; lambda must be 1");
  }
  SpectralTemplate out = t;
  const auto& qs = t.grid.q_values();
  const auto& radial = t.grid.radial_values();
  const double log_lambda = std::log(lambda);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const Complex rot = std::polar(1.0, qs[i] * phi);
    auto row = out.values.row(i);
    for (std::size_t j = 0; j < radial.size(); ++j) {
      Complex f = rot;
      if (scaled) f = mul(f, std::polar(1.0, radial[j] * log_lambda));
      row[j] = mul(row[j], f);
    }
  }
  return out;
}

}  // namespace pairspec
