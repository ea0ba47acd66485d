#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "pairspec/matrix.hpp"
#include "pairspec/minutiae.hpp"

namespace pairspec {

using Complex = std::complex<double>;

/// L functions are sampled on (q, w) with w the frequency conjugate to ln R;
/// M functions are sampled directly on (q, R) with Gaussian radial peaks.
enum class Family { L, M };
enum class GridKind { LogPolarFreq, RadialDirect };
/// LOCATION uses pair positions only; LOCATION_ORIENTATION adds the factor
/// e^{i(theta_a - theta_b)}.
enum class Variant { Location, LocationOrientation };

/// Radial range preset for the M family.
enum class RadialProfile { Mcyt, Verifinger };

const char* to_string(Family f) noexcept;
const char* to_string(GridKind k) noexcept;
const char* to_string(Variant v) noexcept;
Family family_from_string(const std::string& s);
Variant variant_from_string(const std::string& s);

inline GridKind grid_kind_for(Family f) noexcept {
  return f == Family::L ? GridKind::LogPolarFreq : GridKind::RadialDirect;
}

/// n equally spaced values from first to last, both included.
std::vector<double> linspace(double first, double last, std::size_t n);

class GridSpec {
 public:
  GridSpec() = default;
  /// Throws std::invalid_argument unless q values are nonzero and distinct,
  /// radial values strictly increasing, and sigma > 0 for RadialDirect.
  GridSpec(GridKind kind, std::vector<int> q_values, std::vector<double> radial_values, double sigma = 0.0);

  GridKind kind() const noexcept { return kind_; }
  const std::vector<int>& q_values() const noexcept { return q_; }
  /// w values for LogPolarFreq, R values in pixels for RadialDirect.
  const std::vector<double>& radial_values() const noexcept { return radial_; }
  double sigma() const noexcept { return sigma_; }
  std::size_t point_count() const noexcept { return q_.size() * radial_.size(); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  GridKind kind_ = GridKind::RadialDirect;
  std::vector<int> q_;
  std::vector<double> radial_;
  double sigma_ = 0.0;
};

inline constexpr double kDefaultSigma = 2.3;
/// Image width at or above which the automatic M profile is Verifinger-like.
inline constexpr int kVerifingerWidth = 326;

GridSpec default_grid(Family family, Variant variant, RadialProfile profile);
/// Picks the radial profile from the image width: Verifinger for widths of
/// at least 326 pixels, MCYT otherwise.
GridSpec default_grid(Family family, Variant variant, int image_width);

struct SpectralTemplate {
  GridSpec grid;
  Variant variant = Variant::Location;
  Matrix<Complex> values;  ///< [q index][radial index]

  friend bool operator==(const SpectralTemplate&, const SpectralTemplate&) = default;
};

struct SpectralOptions {
  /// Skip Gaussian terms with |R - R_ab| > 6 sigma (M family only).
  bool truncate_gaussian = false;
  PairWeightFn weight;
};

/// L_x / L_xθ: sum over admissible ordered pairs of
/// e^{iqφ_ab} e^{iw ln R_ab} [e^{i(θ_a-θ_b)}]. Throws
/// InsufficientMinutiaeError when no pair is admissible.
SpectralTemplate compute_L(const MinutiaSet& set, Variant variant, const GridSpec& grid,
                           const SpectralOptions& options = {});

/// M_x / M_xθ: sum over admissible ordered pairs of
/// e^{iqφ_ab} exp(-(R - R_ab)^2 / 2σ^2) [e^{i(θ_a-θ_b)}].
SpectralTemplate compute_M(const MinutiaSet& set, Variant variant, const GridSpec& grid,
                           const SpectralOptions& options = {});

/// Dispatches on the grid kind.
SpectralTemplate compute_template(const MinutiaSet& set, Variant variant, const GridSpec& grid,
                                  const SpectralOptions& options = {});

/// Applies the template-domain image of rotating the minutiae by `phi`
/// (counter-clockwise, θ -> θ + φ) and scaling by `lambda`. Scaling only
/// exists for LogPolarFreq grids; lambda != 1 on an M grid throws
/// UnsupportedTransformError.
SpectralTemplate transform_template(const SpectralTemplate& t, double phi, double lambda = 1.0);

}  // namespace pairspec
