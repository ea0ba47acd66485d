#include "pairspec/minutiae.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "pairspec/errors.hpp"

namespace pairspec {

double wrap_angle(double radians) noexcept {
  double t = std::fmod(radians, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;  // -tiny + 2π rounds up to 2π
  return t;
}

Minutia::Minutia(double x_, double y_, double theta_, int quality_)
    : x(x_), y(y_), theta(wrap_angle(theta_)), quality(quality_) {
  if (quality < 0 || quality > 100) {
    throw std::invalid_argument("minutia quality " + std::to_string(quality) + " outside [0, 100]");
  }
}

MinutiaSet::MinutiaSet(std::vector<Minutia> minutiae, int image_width, int image_height)
    : minutiae_(std::move(minutiae)), width_(image_width), height_(image_height) {
  if (width_ <= 0 || height_ <= 0) {
    throw std::invalid_argument("image dimensions must be positive");
  }
  for (std::size_t i = 0; i < minutiae_.size(); ++i) {
    const Minutia& m = minutiae_[i];
    if (!(m.x >= 0.0 && m.x <= width_ && m.y >= 0.0 && m.y <= height_)) {
      throw std::invalid_argument("minutia " + std::to_string(i) + " lies outside the image");
    }
  }
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool is_skippable(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

MinutiaSet parse_minutiae(const std::string& text, const ParseOptions& options) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  int width = 0;
  int height = 0;
  std::vector<Minutia> minutiae;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    auto fields = split_fields(line);
    if (!have_header) {
      if (fields.size() != 2 || !parse_number(fields[0], width) || !parse_number(fields[1], height) ||
          width <= 0 || height <= 0) {
        throw ParseError("expected header \"<image_width> <image_height>\" with positive integers", line_no);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError("expected \"<x> <y> <theta_degrees> <quality>\"", line_no);
    }
    double x = 0.0, y = 0.0, deg = 0.0;
    int quality = 0;
    if (!parse_number(fields[0], x) || !parse_number(fields[1], y) || !parse_number(fields[2], deg) ||
        !parse_number(fields[3], quality)) {
      throw ParseError("malformed number", line_no);
    }
    if (!(x >= 0.0 && x <= width && y >= 0.0 && y <= height)) {
      throw ParseError("coordinate outside the image", line_no);
    }
    if (!(deg >= 0.0 && deg < 360.0)) {
      throw ParseError("angle must be in [0, 360)", line_no);
    }
    if (quality < 0 || quality > 100) {
      throw ParseError("quality must be in [0, 100]", line_no);
    }
    double theta = deg_to_rad(deg);
    if (options.flip_y) {
      y = height - y;
      theta = -theta;
    }
    minutiae.emplace_back(x, y, theta, quality);
  }
  if (!have_header) {
    throw ParseError("missing header", line_no == 0 ? 1 : line_no);
  }
  return MinutiaSet(std::move(minutiae), width, height);
}

MinutiaSet parse_minutiae_file(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_minutiae(buf.str(), options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

std::string format_minutiae(const MinutiaSet& set) {
  std::string out = std::to_string(set.image_width()) + " " + std::to_string(set.image_height()) + "\n";
  char buf[128];
  for (const Minutia& m : set.minutiae()) {
    double deg = rad_to_deg(m.theta);
    if (deg >= 360.0) deg = 0.0;
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %d\n", m.x, m.y, deg, m.quality);
    out += buf;
  }
  return out;
}

void write_minutiae_file(const std::filesystem::path& path, const MinutiaSet& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << format_minutiae(set);
}

MinutiaSet filter_quality(const MinutiaSet& set, int q_min) {
  std::vector<Minutia> kept;
  kept.reserve(set.size());
  std::copy_if(set.minutiae().begin(), set.minutiae().end(), std::back_inserter(kept),
               [q_min](const Minutia& m) { return m.quality >= q_min; });
  return MinutiaSet(std::move(kept), set.image_width(), set.image_height());
}

PairGeometry pair_geometry(const Minutia& a, const Minutia& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  if (dx == 0.0 && dy == 0.0) {
    throw DegeneratePairError("minutiae have identical coordinates");
  }
  return {std::hypot(dx, dy), wrap_angle(std::atan2(dy, dx))};
}

AdmissiblePairs admissible_pairs(const MinutiaSet& set, const PairWeightFn& weight) {
  AdmissiblePairs out;
  const std::size_t z = set.size();
  if (z < 2) return out;
  out.pairs.reserve(z * (z - 1));
  const double width = set.image_width();
  for (std::size_t a = 0; a < z; ++a) {
    for (std::size_t b = 0; b < z; ++b) {
      if (a == b) continue;
      const Minutia& ma = set[a];
      const Minutia& mb = set[b];
      if (ma.x == mb.x && ma.y == mb.y) {
        ++out.coincident_skipped;
        continue;
      }
      PairGeometry g = pair_geometry(ma, mb);
      if (2.0 * g.r > width) {
        ++out.too_long_skipped;
        continue;
      }
      double w = weight ? weight(ma, mb, g) : 1.0;
      if (w == 0.0) continue;
      out.pairs.push_back({a, b, g, w});
    }
  }
  return out;
}

}  // namespace pairspec
