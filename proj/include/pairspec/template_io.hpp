#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "pairspec/baseline.hpp"
#include "pairspec/spectral.hpp"

namespace pairspec {

/// A template as stored on disk: either a pair-based spectral template
/// (family L or M) or a baseline magnitude template (family G).
struct StoredTemplate {
  std::variant<SpectralTemplate, BaselineTemplate> value;
  Family family = Family::M;  ///< meaningful for spectral templates only
  std::string source;         ///< originating minutiae file name, may be empty

  bool is_baseline() const noexcept { return value.index() == 1; }
  const SpectralTemplate& spectral() const { return std::get<SpectralTemplate>(value); }
  const BaselineTemplate& baseline() const { return std::get<BaselineTemplate>(value); }
};

/// Text block: header lines (family, variant, axes, sigma, source), a
/// "data <n>" line, then n rows "<q> <radial> <re> <im>" in row-major grid
/// order, and "end". All reals are written with 17 significant digits so a
/// write/read cycle is bit-exact. A file may hold several blocks.
std::string format_template(const StoredTemplate& t);
std::vector<StoredTemplate> parse_templates(const std::string& text);

void write_templates(const std::filesystem::path& path, const std::vector<StoredTemplate>& templates);
std::vector<StoredTemplate> read_templates(const std::filesystem::path& path);

/// Cheap sniff: true if the file starts like a template file.
bool looks_like_template_file(const std::filesystem::path& path);

}  // namespace pairspec
