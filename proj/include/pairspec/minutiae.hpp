#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace pairspec {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2π).
double wrap_angle(double radians) noexcept;

inline constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

struct Minutia {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  ///< radians, kept in [0, 2π)
  int quality = 100;   ///< [0, 100]

  Minutia() = default;
  /// Wraps theta; throws std::invalid_argument if quality is outside [0, 100].
  Minutia(double x, double y, double theta, int quality);

  friend bool operator==(const Minutia&, const Minutia&) = default;
};

/// Minutiae of one fingerprint image. Coordinates are checked against the
/// image rectangle [0, width] x [0, height] on construction.
class MinutiaSet {
 public:
  MinutiaSet() = default;
  MinutiaSet(std::vector<Minutia> minutiae, int image_width, int image_height);

  const std::vector<Minutia>& minutiae() const noexcept { return minutiae_; }
  std::size_t size() const noexcept { return minutiae_.size(); }
  bool empty() const noexcept { return minutiae_.empty(); }
  const Minutia& operator[](std::size_t i) const { return minutiae_[i]; }
  int image_width() const noexcept { return width_; }
  int image_height() const noexcept { return height_; }

  friend bool operator==(const MinutiaSet&, const MinutiaSet&) = default;

 private:
  std::vector<Minutia> minutiae_;
  int width_ = 1;
  int height_ = 1;
};

/// Distance and direction of the vector from minutia b to minutia a.
struct PairGeometry {
  double r = 0.0;    ///< R_ab > 0, pixels
  double phi = 0.0;  ///< [0, 2π)
};

struct MinutiaPair {
  std::size_t a = 0;
  std::size_t b = 0;
  PairGeometry geometry;
  double weight = 1.0;
};

/// Ordered pairs that enter the spectral sums, in lexicographic (a, b) order.
struct AdmissiblePairs {
  std::vector<MinutiaPair> pairs;
  std::size_t coincident_skipped = 0;  ///< ordered pairs dropped because r == 0
  std::size_t too_long_skipped = 0;    ///< ordered pairs dropped because 2r > width
};

/// Optional per-pair weight. Returning 0 drops the pair from the sums.
using PairWeightFn = std::function<double(const Minutia& a, const Minutia& b, const PairGeometry&)>;

struct ParseOptions {
  /// Mirror y (y -> height - y, theta -> 2π - theta) for data whose y axis
  /// points down.
  bool flip_y = false;
};

/// Reads the plain-text minutiae format: a "<width> <height>" header, then
/// one "<x> <y> <theta_degrees> <quality>" line per minutia. Lines starting
/// with '#' and blank lines are skipped. Throws ParseError naming the line.
MinutiaSet parse_minutiae_file(const std::filesystem::path& path, const ParseOptions& options = {});
MinutiaSet parse_minutiae(const std::string& text, const ParseOptions& options = {});

/// Inverse of parse_minutiae; angles are written in degrees with 17
/// significant digits.
std::string format_minutiae(const MinutiaSet& set);
void write_minutiae_file(const std::filesystem::path& path, const MinutiaSet& set);

MinutiaSet filter_quality(const MinutiaSet& set, int q_min);

/// Throws DegeneratePairError when a and b share coordinates.
PairGeometry pair_geometry(const Minutia& a, const Minutia& b);

/// All ordered pairs a != b with r > 0 and 2r <= image width. The weight hook,
/// when given, sets MinutiaPair::weight; pairs with weight 0 are dropped.
AdmissiblePairs admissible_pairs(const MinutiaSet& set, const PairWeightFn& weight = {});

}  // namespace pairspec
