#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pairspec/matching.hpp"
#include "pairspec/minutiae.hpp"
#include "pairspec/spectral.hpp"

namespace pairspec {

struct FingerImage {
  int image_id = 0;
  std::string name;  ///< file name, empty for in-memory data
  MinutiaSet minutiae;
};

/// All images of one finger, in file (image id) order.
struct Finger {
  std::string id;  ///< "<person>_<finger>"
  int person = 0;
  int finger = 0;
  std::vector<FingerImage> images;
};

using FingerprintDb = std::vector<Finger>;

/// Loads every "<person>_<finger>_<image>.xyt" file in `dir`, grouped by
/// finger and sorted by (person, finger, image). Other files are ignored.
/// A non-empty `persons` keeps only those person ids.
FingerprintDb load_database(const std::filesystem::path& dir, const ParseOptions& options = {},
                            const std::vector<int>& persons = {});

/// Writes `db` back in the same naming convention.
void write_database(const std::filesystem::path& dir, const FingerprintDb& db);

struct MatcherConfig {
  Family family = Family::M;
  GridSpec grid_x;       ///< LOCATION grid
  GridSpec grid_xtheta;  ///< LOCATION_ORIENTATION grid
  int q_min = 45;
  std::vector<double> angles{0.0};
  SpectralOptions spectral;
  unsigned threads = 0;  ///< 0 = hardware concurrency

  static MatcherConfig defaults(Family family, RadialProfile profile);
};

/// Quality filter followed by both spectral variants.
TemplatePair make_templates(const MinutiaSet& set, const MatcherConfig& config);

enum class ComparisonKind { Genuine, Impostor };

struct Comparison {
  ComparisonKind kind = ComparisonKind::Genuine;
  std::size_t finger_a = 0, image_a = 0;  ///< indices into the database
  std::size_t finger_b = 0, image_b = 0;
  MatchResult result;
  /// Template or score could not be computed (too few minutiae, zero
  /// variance); the comparison counts as a reject with all scores 0.
  bool failed = false;
};

struct ComparisonSet {
  std::vector<Comparison> comparisons;
  std::size_t skipped_fingers = 0;  ///< fingers with fewer than two images
  std::size_t failed = 0;

  std::vector<double> fused_scores() const;
  std::vector<double> x_scores() const;
  std::vector<double> xtheta_scores() const;
};

/// Templates for every image of `db`; nullopt where enrollment failed.
using TemplateCache = std::vector<std::vector<std::optional<TemplatePair>>>;
TemplateCache build_templates(const FingerprintDb& db, const MatcherConfig& config);

/// Every unordered image pair of every finger; the earlier image is the
/// enrolled one.
ComparisonSet genuine_comparisons(const FingerprintDb& db, const MatcherConfig& config);
ComparisonSet genuine_comparisons(const FingerprintDb& db, const TemplateCache& cache, const MatcherConfig& config);

/// One comparison per unordered pair of distinct fingers, each side using an
/// image drawn by a generator keyed on (seed, finger_a, finger_b).
ComparisonSet impostor_comparisons(const FingerprintDb& db, std::uint64_t seed, const MatcherConfig& config);
ComparisonSet impostor_comparisons(const FingerprintDb& db, const TemplateCache& cache, std::uint64_t seed,
                                   const MatcherConfig& config);

/// Image indices drawn for the impostor comparison of fingers fa < fb.
std::pair<std::size_t, std::size_t> impostor_draw(std::uint64_t seed, std::size_t fa, std::size_t fb,
                                                  std::size_t images_a, std::size_t images_b);

struct RocPoint {
  double threshold = 0.0;
  double far = 0.0;  ///< fraction of impostor scores >= threshold
  double frr = 0.0;  ///< fraction of genuine scores < threshold
};

struct RocResult {
  std::vector<RocPoint> roc;
  double eer = 0.0;
};

/// Thresholds are the sorted distinct scores plus one point just above the
/// maximum (everything rejected). EER is where FAR - FRR crosses zero, by
/// linear interpolation between the bracketing points. Throws ProtocolError
/// on an empty list.
RocResult roc_and_eer(const std::vector<double>& genuine, const std::vector<double>& impostor);

/// Optimal rotation angle (radians, one of `angles`) -> count.
using AngleHistogram = std::map<double, std::size_t>;

AngleHistogram optimal_angle_histogram(const FingerprintDb& db, const std::vector<double>& angles,
                                       const MatcherConfig& config);
AngleHistogram angle_histogram(const ComparisonSet& genuine);

struct EvalReport {
  std::vector<double> genuine_scores;
  std::vector<double> impostor_scores;
  std::vector<RocPoint> roc;
  double eer = 0.0;
  AngleHistogram phi_histogram;
  ComparisonSet genuine;
  ComparisonSet impostor;
};

EvalReport evaluate(const FingerprintDb& db, std::uint64_t seed, const MatcherConfig& config);

/// comparisons.csv, roc.csv, phi_histogram.csv and summary.txt ("EER=<v>").
void write_report(const std::filesystem::path& dir, const FingerprintDb& db, const EvalReport& report);
std::string format_comparisons_csv(const FingerprintDb& db, const EvalReport& report);
std::string format_roc_csv(const std::vector<RocPoint>& roc);
std::string format_summary(const EvalReport& report);

}  // namespace pairspec
