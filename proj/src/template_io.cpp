#include "pairspec/template_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pairspec/errors.hpp"

namespace pairspec {

namespace {

constexpr const char* kMagic = "#pairspec-template";

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (const T& v : values) {
    out += ' ';
    if constexpr (std::is_same_v<T, double>) {
      out += fmt17(v);
    } else {
      out += std::to_string(v);
    }
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }
  std::string expect(const std::string& key) {
    std::string line;
    if (!next(line)) fail("unexpected end of file, expected '" + key + "'");
    if (line.compare(0, key.size(), key) != 0 || (line.size() > key.size() && line[key.size()] != ' ')) {
      fail("expected '" + key + "'");
    }
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_); }
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::istringstream in_;
  std::size_t line_no_ = 0;
};

template <typename T>
T to_number(const LineReader& r, std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) r.fail("malformed number '" + std::string(s) + "'");
  return v;
}

template <typename T>
std::vector<T> to_numbers(const LineReader& r, const std::string& s) {
  std::vector<T> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(to_number<T>(r, tok));
  return out;
}

struct Row {
  std::string first, second;
  double re = 0.0, im = 0.0;
};

Row read_row(LineReader& r) {
  std::string line;
  if (!r.next(line)) r.fail("unexpected end of data");
  std::istringstream in(line);
  std::string a, b, re, im, extra;
  if (!(in >> a >> b >> re >> im) || (in >> extra)) r.fail("expected \"<row> <col> <re> <im>\"");
  return {a, b, to_number<double>(r, re), to_number<double>(r, im)};
}

}  // namespace

std::string format_template(const StoredTemplate& t) {
  std::string out = std::string(kMagic) + "\n";
  if (!t.is_baseline()) {
    const SpectralTemplate& s = t.spectral();
    out += std::string("family ") + to_string(t.family) + "\n";
    out += std::string("variant ") + to_string(s.variant) + "\n";
    out += "q" + join(s.grid.q_values()) + "\n";
    out += "radial" + join(s.grid.radial_values()) + "\n";
    out += "sigma " + fmt17(s.grid.sigma()) + "\n";
    out += "source " + t.source + "\n";
    out += "data " + std::to_string(s.values.size()) + "\n";
    for (std::size_t i = 0; i < s.values.rows(); ++i) {
      for (std::size_t j = 0; j < s.values.cols(); ++j) {
        const Complex v = s.values(i, j);
        out += std::to_string(s.grid.q_values()[i]) + ' ' + fmt17(s.grid.radial_values()[j]) + ' ' +
               fmt17(v.real()) + ' ' + fmt17(v.imag()) + '\n';
      }
    }
  } else {
    const BaselineTemplate& g = t.baseline();
    out += "family G\n";
    out += std::string("variant ") + to_string(g.variant) + "\n";
    out += "alpha" + join(g.grid.alpha_values) + "\n";
    out += "beta" + join(g.grid.beta_values) + "\n";
    out += "sigma " + fmt17(g.grid.sigma) + "\n";
    out += "source " + t.source + "\n";
    out += "data " + std::to_string(g.values.size()) + "\n";
    for (std::size_t i = 0; i < g.values.rows(); ++i) {
      for (std::size_t j = 0; j < g.values.cols(); ++j) {
        out += fmt17(g.grid.alpha_values[i]) + ' ' + fmt17(g.grid.beta_values[j]) + ' ' + fmt17(g.values(i, j)) +
               " 0\n";
      }
    }
  }
  out += "end\n";
  return out;
}

std::vector<StoredTemplate> parse_templates(const std::string& text) {
  LineReader r(text);
  std::vector<StoredTemplate> out;
  std::string line;
  while (r.next(line)) {
    if (line != kMagic) r.fail(std::string("expected '") + kMagic + "'");
    const std::string family = r.expect("family");
    const std::string variant = r.expect("variant");
    StoredTemplate t;
    try {
      if (family == "G") {
        BaselineTemplate g;
        g.variant = baseline_variant_from_string(variant);
        g.grid.alpha_values = to_numbers<double>(r, r.expect("alpha"));
        g.grid.beta_values = to_numbers<double>(r, r.expect("beta"));
        g.grid.sigma = to_number<double>(r, r.expect("sigma"));
        t.source = r.expect("source");
        const auto n = to_number<std::size_t>(r, r.expect("data"));
        if (n != g.grid.point_count()) r.fail("data count does not match the grid");
        g.values = Matrix<double>(g.grid.alpha_values.size(), g.grid.beta_values.size());
        for (std::size_t i = 0; i < g.values.rows(); ++i) {
          for (std::size_t j = 0; j < g.values.cols(); ++j) {
            Row row = read_row(r);
            if (to_number<double>(r, row.first) != g.grid.alpha_values[i] ||
                to_number<double>(r, row.second) != g.grid.beta_values[j]) {
              r.fail("row out of grid order");
            }
            g.values(i, j) = row.re;
          }
        }
        t.value = std::move(g);
      } else {
        t.family = family_from_string(family);
        const Variant v = variant_from_string(variant);
        auto qs = to_numbers<int>(r, r.expect("q"));
        auto radial = to_numbers<double>(r, r.expect("radial"));
        const double sigma = to_number<double>(r, r.expect("sigma"));
        t.source = r.expect("source");
        GridSpec grid(grid_kind_for(t.family), std::move(qs), std::move(radial), sigma);
        const auto n = to_number<std::size_t>(r, r.expect("data"));
        if (n != grid.point_count()) r.fail("data count does not match the grid");
        SpectralTemplate s{grid, v, Matrix<Complex>(grid.q_values().size(), grid.radial_values().size())};
        for (std::size_t i = 0; i < s.values.rows(); ++i) {
          for (std::size_t j = 0; j < s.values.cols(); ++j) {
            Row row = read_row(r);
            if (to_number<int>(r, row.first) != grid.q_values()[i] ||
                to_number<double>(r, row.second) != grid.radial_values()[j]) {
              r.fail("row out of grid order");
            }
            s.values(i, j) = Complex(row.re, row.im);
          }
        }
        t.value = std::move(s);
      }
    } catch (const std::invalid_argument& e) {
      r.fail(e.what());
    }
    r.expect("end");
    out.push_back(std::move(t));
  }
  if (out.empty()) throw ParseError("no template blocks", 0);
  return out;
}

void write_templates(const std::filesystem::path& path, const std::vector<StoredTemplate>& templates) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const StoredTemplate& t : templates) out << format_template(t);
}

std::vector<StoredTemplate> read_templates(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_templates(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

bool looks_like_template_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string first;
  std::getline(in, first);
  if (!first.empty() && first.back() == '\r') first.pop_back();
  return first == kMagic;
}

}  // namespace pairspec
