#include "pairspec/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <regex>
#include <thread>

#include "pairspec/errors.hpp"

namespace pairspec {

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

void compare(Comparison& c, const std::optional<TemplatePair>& enrolled, const std::optional<TemplatePair>& probe,
             const MatcherConfig& config) {
  if (!enrolled || !probe) {
    c.failed = true;
    return;
  }
  try {
    c.result = match_with_rotation(*enrolled, *probe, config.angles);
  } catch (const DegenerateScoreError&) {
    c.result = {};
    c.failed = true;
  }
}

std::size_t count_failed(const std::vector<Comparison>& cs) {
  return static_cast<std::size_t>(std::count_if(cs.begin(), cs.end(), [](const Comparison& c) { return c.failed; }));
}

std::string fmt(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

FingerprintDb load_database(const std::filesystem::path& dir, const ParseOptions& options,
                            const std::vector<int>& persons) {
  if (!std::filesystem::is_directory(dir)) throw UsageError("not a directory: " + dir.string());
  static const std::regex name_re(R"((\d+)_(\d+)_(\d+)\.xyt)");
  struct Entry {
    int person, finger, image;
    std::filesystem::path path;
  };
  std::vector<Entry> entries;
  for (const auto& de : std::filesystem::directory_iterator(dir)) {
    if (!de.is_regular_file()) continue;
    const std::string name = de.path().filename().string();
    std::smatch m;
    if (!std::regex_match(name, m, name_re)) continue;
    const int person = std::stoi(m[1]);
    if (!persons.empty() && std::find(persons.begin(), persons.end(), person) == persons.end()) continue;
    entries.push_back({person, std::stoi(m[2]), std::stoi(m[3]), de.path()});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.person, a.finger, a.image) < std::tie(b.person, b.finger, b.image);
  });
  FingerprintDb db;
  for (const Entry& e : entries) {
    if (db.empty() || db.back().person != e.person || db.back().finger != e.finger) {
      db.push_back({std::to_string(e.person) + "_" + std::to_string(e.finger), e.person, e.finger, {}});
    }
    db.back().images.push_back({e.image, e.path.filename().string(), parse_minutiae_file(e.path, options)});
  }
  return db;
}

void write_database(const std::filesystem::path& dir, const FingerprintDb& db) {
  std::filesystem::create_directories(dir);
  for (const Finger& f : db) {
    for (const FingerImage& img : f.images) {
      const std::string name =
          std::to_string(f.person) + "_" + std::to_string(f.finger) + "_" + std::to_string(img.image_id) + ".xyt";
      write_minutiae_file(dir / name, img.minutiae);
    }
  }
}

MatcherConfig MatcherConfig::defaults(Family family, RadialProfile profile) {
  MatcherConfig c;
  c.family = family;
  c.grid_x = default_grid(family, Variant::Location, profile);
  c.grid_xtheta = default_grid(family, Variant::LocationOrientation, profile);
  return c;
}

TemplatePair make_templates(const MinutiaSet& set, const MatcherConfig& config) {
  const MinutiaSet filtered = filter_quality(set, config.q_min);
  return {compute_template(filtered, Variant::Location, config.grid_x, config.spectral),
          compute_template(filtered, Variant::LocationOrientation, config.grid_xtheta, config.spectral)};
}

std::vector<double> ComparisonSet::fused_scores() const {
  std::vector<double> out;
  out.reserve(comparisons.size());
  for (const Comparison& c : comparisons) out.push_back(c.result.fused);
  return out;
}

std::vector<double> ComparisonSet::x_scores() const {
  std::vector<double> out;
  out.reserve(comparisons.size());
  for (const Comparison& c : comparisons) out.push_back(c.result.score_x);
  return out;
}

std::vector<double> ComparisonSet::xtheta_scores() const {
  std::vector<double> out;
  out.reserve(comparisons.size());
  for (const Comparison& c : comparisons) out.push_back(c.result.score_xtheta);
  return out;
}

TemplateCache build_templates(const FingerprintDb& db, const MatcherConfig& config) {
  TemplateCache cache(db.size());
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t f = 0; f < db.size(); ++f) {
    cache[f].resize(db[f].images.size());
    for (std::size_t i = 0; i < db[f].images.size(); ++i) jobs.emplace_back(f, i);
  }
  parallel_for(jobs.size(), config.threads, [&](std::size_t k) {
    const auto [f, i] = jobs[k];
    try {
      cache[f][i] = make_templates(db[f].images[i].minutiae, config);
    } catch (const InsufficientMinutiaeError&) {
      cache[f][i].reset();
    }
  });
  return cache;
}

ComparisonSet genuine_comparisons(const FingerprintDb& db, const MatcherConfig& config) {
  return genuine_comparisons(db, build_templates(db, config), config);
}

ComparisonSet genuine_comparisons(const FingerprintDb& db, const TemplateCache& cache, const MatcherConfig& config) {
  ComparisonSet out;
  for (std::size_t f = 0; f < db.size(); ++f) {
    const std::size_t n = db[f].images.size();
    if (n < 2) {
      ++out.skipped_fingers;
      continue;
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        out.comparisons.push_back({ComparisonKind::Genuine, f, a, f, b, {}, false});
      }
    }
  }
  parallel_for(out.comparisons.size(), config.threads, [&](std::size_t k) {
    Comparison& c = out.comparisons[k];
    compare(c, cache[c.finger_a][c.image_a], cache[c.finger_b][c.image_b], config);
  });
  out.failed = count_failed(out.comparisons);
  return out;
}

std::pair<std::size_t, std::size_t> impostor_draw(std::uint64_t seed, std::size_t fa, std::size_t fb,
                                                  std::size_t images_a, std::size_t images_b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(fa), static_cast<std::uint32_t>(fb)};
  std::mt19937_64 rng(seq);
  const std::size_t ia = static_cast<std::size_t>(rng() % images_a);
  const std::size_t ib = static_cast<std::size_t>(rng() % images_b);
  return {ia, ib};
}

ComparisonSet impostor_comparisons(const FingerprintDb& db, std::uint64_t seed, const MatcherConfig& config) {
  return impostor_comparisons(db, build_templates(db, config), seed, config);
}

ComparisonSet impostor_comparisons(const FingerprintDb& db, const TemplateCache& cache, std::uint64_t seed,
                                   const MatcherConfig& config) {
  ComparisonSet out;
  for (std::size_t fa = 0; fa < db.size(); ++fa) {
    if (db[fa].images.empty()) continue;
    for (std::size_t fb = fa + 1; fb < db.size(); ++fb) {
      if (db[fb].images.empty()) continue;
      const auto [ia, ib] = impostor_draw(seed, fa, fb, db[fa].images.size(), db[fb].images.size());
      out.comparisons.push_back({ComparisonKind::Impostor, fa, ia, fb, ib, {}, false});
    }
  }
  parallel_for(out.comparisons.size(), config.threads, [&](std::size_t k) {
    Comparison& c = out.comparisons[k];
    compare(c, cache[c.finger_a][c.image_a], cache[c.finger_b][c.image_b], config);
  });
  out.failed = count_failed(out.comparisons);
  return out;
}

RocResult roc_and_eer(const std::vector<double>& genuine, const std::vector<double>& impostor) {
  if (genuine.empty() || impostor.empty()) throw ProtocolError("ROC needs non-empty genuine and impostor lists");
  std::vector<double> g = genuine;
  std::vector<double> im = impostor;
  std::sort(g.begin(), g.end());
  std::sort(im.begin(), im.end());
  std::vector<double> thresholds;
  thresholds.reserve(g.size() + im.size() + 1);
  std::merge(g.begin(), g.end(), im.begin(), im.end(), std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(std::nextafter(thresholds.back(), std::numeric_limits<double>::infinity()));

  const double ng = static_cast<double>(g.size());
  const double ni = static_cast<double>(im.size());
  RocResult out;
  out.roc.reserve(thresholds.size());
  std::size_t g_below = 0;   // genuine scores < t
  std::size_t im_below = 0;  // impostor scores < t
  for (double t : thresholds) {
    while (g_below < g.size() && g[g_below] < t) ++g_below;
    while (im_below < im.size() && im[im_below] < t) ++im_below;
    out.roc.push_back({t, static_cast<double>(im.size() - im_below) / ni, static_cast<double>(g_below) / ng});
  }

  // FAR - FRR starts at 1 (lowest threshold) and ends at -1 (sentinel).
  for (std::size_t k = 0; k < out.roc.size(); ++k) {
    const double d = out.roc[k].far - out.roc[k].frr;
    if (d > 0.0) continue;
    if (d == 0.0 || k == 0) {
      out.eer = out.roc[k].far;
    } else {
      const RocPoint& p = out.roc[k - 1];
      const RocPoint& q = out.roc[k];
      const double dp = p.far - p.frr;
      const double s = dp / (dp - d);
      out.eer = p.far + s * (q.far - p.far);
    }
    break;
  }
  return out;
}

AngleHistogram angle_histogram(const ComparisonSet& genuine) {
  AngleHistogram h;
  for (const Comparison& c : genuine.comparisons) {
    if (!c.failed) ++h[c.result.phi_opt];
  }
  return h;
}

AngleHistogram optimal_angle_histogram(const FingerprintDb& db, const std::vector<double>& angles,
                                       const MatcherConfig& config) {
  if (angles.empty()) throw std::invalid_argument("angle list must be non-empty");
  MatcherConfig c = config;
  c.angles = angles;
  return angle_histogram(genuine_comparisons(db, c));
}

EvalReport evaluate(const FingerprintDb& db, std::uint64_t seed, const MatcherConfig& config) {
  const TemplateCache cache = build_templates(db, config);
  EvalReport r;
  r.genuine = genuine_comparisons(db, cache, config);
  r.impostor = impostor_comparisons(db, cache, seed, config);
  r.genuine_scores = r.genuine.fused_scores();
  r.impostor_scores = r.impostor.fused_scores();
  RocResult roc = roc_and_eer(r.genuine_scores, r.impostor_scores);
  r.roc = std::move(roc.roc);
  r.eer = roc.eer;
  r.phi_histogram = angle_histogram(r.genuine);
  return r;
}

std::string format_comparisons_csv(const FingerprintDb& db, const EvalReport& report) {
  std::string out = "kind,finger_a,image_a,finger_b,image_b,score_x,score_xtheta,fused,phi_opt\n";
  for (const ComparisonSet* set : {&report.genuine, &report.impostor}) {
    for (const Comparison& c : set->comparisons) {
      out += c.kind == ComparisonKind::Genuine ? "genuine," : "impostor,";
      out += db[c.finger_a].id + ',' + std::to_string(db[c.finger_a].images[c.image_a].image_id) + ',';
      out += db[c.finger_b].id + ',' + std::to_string(db[c.finger_b].images[c.image_b].image_id) + ',';
      out += fmt(c.result.score_x) + ',' + fmt(c.result.score_xtheta) + ',' + fmt(c.result.fused) + ',' +
             fmt(c.result.phi_opt) + '\n';
    }
  }
  return out;
}

std::string format_roc_csv(const std::vector<RocPoint>& roc) {
  std::string out = "threshold,FAR,FRR\n";
  for (const RocPoint& p : roc) out += fmt(p.threshold) + ',' + fmt(p.far) + ',' + fmt(p.frr) + '\n';
  return out;
}

std::string format_summary(const EvalReport& report) { return "EER=" + fmt(report.eer, 9) + "\n"; }

void write_report(const std::filesystem::path& dir, const FingerprintDb& db, const EvalReport& report) {
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << text;
  };
  write("comparisons.csv", format_comparisons_csv(db, report));
  write("roc.csv", format_roc_csv(report.roc));
  std::string hist = "phi_opt_rad,phi_opt_deg,count\n";
  for (const auto& [phi, n] : report.phi_histogram) hist += fmt(phi) + ',' + fmt(rad_to_deg(phi), 9) + ',' + std::to_string(n) + '\n';
  write("phi_histogram.csv", hist);
  write("summary.txt", format_summary(report));
}

}  // namespace pairspec
