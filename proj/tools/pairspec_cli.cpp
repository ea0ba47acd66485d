// pairspec: command-line front end for minutia-pair spectral templates.
//
//   pairspec template <minutiae.xyt> -o <out.tpl>
//   pairspec match <a> <b>                 (minutiae or template files)
//   pairspec eval <db_dir> -o <report_dir>
//   pairspec synth -o <db_dir>
//   pairspec bench
//
// Exit codes: 0 success, 2 usage error, 3 data error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pairspec/baseline.hpp"
#include "pairspec/cost.hpp"
#include "pairspec/errors.hpp"
#include "pairspec/evaluation.hpp"
#include "pairspec/matching.hpp"
#include "pairspec/synthgen.hpp"
#include "pairspec/template_io.hpp"

namespace {

using namespace pairspec;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct Profile {
  RadialProfile radial;
  std::vector<double> rotation_preset;
};

Profile profile_by_name(const std::string& name) {
  if (name == "mcyt") return {RadialProfile::Mcyt, rotation_pm3_step1p5()};
  if (name == "verifinger") return {RadialProfile::Verifinger, rotation_pm4p5_step1p5()};
  if (name == "synthetic") return {RadialProfile::Mcyt, rotation_pm4p5_step1p5()};
  throw UsageError("unknown profile '" + name + "'");
}

struct MatchOptions {
  std::string profile = "mcyt";
  std::string family = "M";
  int q_min = 45;
  std::string rotation = "off";
  bool flip_y = false;
  bool truncate = false;
  unsigned threads = 0;
};

void add_match_options(CLI::App* cmd, MatchOptions& o) {
  cmd->add_option("--profile", o.profile, "Parameter profile")
      ->check(CLI::IsMember({"mcyt", "verifinger", "synthetic"}))
      ->capture_default_str();
  cmd->add_option("--family", o.family, "Spectral function family")->check(CLI::IsMember({"L", "M"}))->capture_default_str();
  cmd->add_option("--q-min", o.q_min, "Minimum minutia quality")->check(CLI::Range(0, 101))->capture_default_str();
  cmd->add_option("--rotation", o.rotation,
                  "Rotation search: off, on (profile preset), or max:step in degrees, e.g. 6:1")
      ->capture_default_str();
  cmd->add_flag("--flip-y", o.flip_y, "Input y axis points down; mirror on load");
  cmd->add_flag("--truncate-gaussian", o.truncate, "Skip Gaussian terms beyond 6 sigma (M only)");
}

std::vector<double> parse_rotation(const std::string& spec, const Profile& profile) {
  if (spec == "off") return rotation_off();
  if (spec == "on") return profile.rotation_preset;
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("--rotation expects off, on, or max:step");
  try {
    return rotation_angles(std::stod(spec.substr(0, colon)), std::stod(spec.substr(colon + 1)));
  } catch (const std::exception&) {
    throw UsageError("--rotation expects off, on, or max:step");
  }
}

MatcherConfig make_config(const MatchOptions& o) {
  const Profile p = profile_by_name(o.profile);
  MatcherConfig c = MatcherConfig::defaults(family_from_string(o.family), p.radial);
  c.q_min = o.q_min;
  c.angles = parse_rotation(o.rotation, p);
  c.spectral.truncate_gaussian = o.truncate;
  c.threads = o.threads;
  return c;
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

TemplatePair pair_from_file(const std::string& path) {
  const auto blocks = read_templates(path);
  std::optional<SpectralTemplate> x, xt;
  for (const StoredTemplate& t : blocks) {
    if (t.is_baseline()) throw UsageError(path + ": baseline (family G) templates cannot be matched here");
    (t.spectral().variant == Variant::Location ? x : xt) = t.spectral();
  }
  if (!x || !xt) throw IncompatibleTemplateError(path + ": needs both LOCATION and LOCATION_ORIENTATION blocks");
  return {*x, *xt};
}

int cmd_template(const std::string& input, const std::string& output, const std::string& family_name,
                 const MatchOptions& o) {
  const MinutiaSet set = filter_quality(parse_minutiae_file(input, {o.flip_y}), o.q_min);
  const std::string source = std::filesystem::path(input).filename().string();
  std::vector<StoredTemplate> blocks;
  if (family_name == "G") {
    const BaselineGrid grid = default_baseline_grid();
    for (auto v : {BaselineVariant::Plain, BaselineVariant::Orientation}) {
      blocks.push_back({compute_G(set, grid, v), Family::M, source});
    }
  } else {
    MatchOptions opts = o;
    opts.family = family_name;
    const MatcherConfig c = make_config(opts);
    // Quality filtering already happened above.
    const TemplatePair pair{compute_template(set, Variant::Location, c.grid_x, c.spectral),
                            compute_template(set, Variant::LocationOrientation, c.grid_xtheta, c.spectral)};
    blocks.push_back({pair.location, c.family, source});
    blocks.push_back({pair.location_orientation, c.family, source});
  }
  write_templates(output, blocks);
  return 0;
}

struct BaselinePair {
  BaselineTemplate plain, orientation;
};

std::optional<BaselinePair> baseline_from_file(const std::string& path) {
  if (!looks_like_template_file(path)) return std::nullopt;
  const auto blocks = read_templates(path);
  if (blocks.empty() || !blocks.front().is_baseline()) return std::nullopt;
  std::optional<BaselineTemplate> plain, orient;
  for (const StoredTemplate& t : blocks) {
    if (!t.is_baseline()) throw IncompatibleTemplateError(path + ": mixes baseline and spectral blocks");
    (t.baseline().variant == BaselineVariant::Plain ? plain : orient) = t.baseline();
  }
  if (!plain || !orient) throw IncompatibleTemplateError(path + ": needs both baseline variants");
  return BaselinePair{*plain, *orient};
}

// Rotation angles become column shifts of the angular axis; a probe rotated
// by +phi lines up at shift +phi/step, reported as the correction -phi.
int cmd_match_baseline(const BaselinePair& enrolled, const BaselinePair& probe, const std::vector<double>& angles) {
  const std::size_t cols = enrolled.plain.values.cols();
  const double step = kTwoPi / static_cast<double>(cols);
  std::vector<int> shifts;
  for (double phi : angles) shifts.push_back(static_cast<int>(std::lround(-phi / step)));
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  MatchResult best;
  bool first = true;
  for (int sh : shifts) {
    const std::span<const int> one(&sh, 1);
    MatchResult r;
    r.score_x = baseline_match(probe.plain.values, enrolled.plain.values, one).score;
    r.score_xtheta = baseline_match(probe.orientation.values, enrolled.orientation.values, one).score;
    r.fused = r.score_x + r.score_xtheta;
    r.phi_opt = -sh * step;
    if (first || better_match(r, best)) best = r;
    first = false;
  }
  std::cout << fmt9(best.score_x) << ' ' << fmt9(best.score_xtheta) << ' ' << fmt9(best.fused) << ' '
            << fmt9(best.phi_opt) << '\n';
  return 0;
}

int cmd_match(const std::string& a, const std::string& b, const MatchOptions& o) {
  const MatcherConfig c = make_config(o);
  const auto ga = baseline_from_file(a);
  const auto gb = baseline_from_file(b);
  if (ga && gb) return cmd_match_baseline(*ga, *gb, c.angles);
  if (ga || gb) throw IncompatibleTemplateError("cannot match a baseline template against a spectral one");
  auto load = [&](const std::string& path) {
    if (looks_like_template_file(path)) return pair_from_file(path);
    return make_templates(parse_minutiae_file(path, {o.flip_y}), c);
  };
  const TemplatePair enrolled = load(a);
  const TemplatePair probe = load(b);
  const MatchResult r = match_with_rotation(enrolled, probe, c.angles);
  std::cout << fmt9(r.score_x) << ' ' << fmt9(r.score_xtheta) << ' ' << fmt9(r.fused) << ' ' << fmt9(r.phi_opt) << '\n';
  return 0;
}

int cmd_eval(const std::string& dir, const std::string& out_dir, std::uint64_t seed, const std::vector<int>& persons,
             const MatchOptions& o) {
  const MatcherConfig c = make_config(o);
  const FingerprintDb db = load_database(dir, {o.flip_y}, persons);
  if (db.size() < 2) throw UsageError("eval needs at least two fingers in " + dir);
  const EvalReport report = evaluate(db, seed, c);
  write_report(out_dir, db, report);
  std::cerr << "genuine=" << report.genuine_scores.size() << " impostor=" << report.impostor_scores.size()
            << " failed=" << report.genuine.failed + report.impostor.failed
            << " skipped_fingers=" << report.genuine.skipped_fingers << '\n';
  std::cout << format_summary(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minutia-pair spectral fingerprint templates"};
  app.require_subcommand(1);

  MatchOptions opts;
  std::string in_a, in_b, out_path, family_name = "M";
  std::uint64_t seed = 1;
  std::vector<int> persons;

  auto* tpl = app.add_subcommand("template", "Minutiae file -> template file");
  tpl->add_option("minutiae", in_a, "Minutiae file")->required();
  tpl->add_option("-o,--output", out_path, "Template file to write")->required();
  tpl->add_option("--profile", opts.profile)->check(CLI::IsMember({"mcyt", "verifinger", "synthetic"}));
  tpl->add_option("--family", family_name, "L, M, or G (baseline)")->check(CLI::IsMember({"L", "M", "G"}));
  tpl->add_option("--q-min", opts.q_min)->check(CLI::Range(0, 101));
  tpl->add_flag("--flip-y", opts.flip_y);
  tpl->add_flag("--truncate-gaussian", opts.truncate);

  auto* match = app.add_subcommand("match", "Match two minutiae or template files");
  match->add_option("enrolled", in_a)->required();
  match->add_option("probe", in_b)->required();
  add_match_options(match, opts);

  auto* eval = app.add_subcommand("eval", "Genuine/impostor protocol over a database directory");
  eval->add_option("database", in_a, "Directory of <person>_<finger>_<image>.xyt files")->required();
  eval->add_option("-o,--output", out_path, "Report directory")->required();
  eval->add_option("--seed", seed, "Impostor draw seed")->capture_default_str();
  eval->add_option("--persons", persons, "Only these person ids")->delimiter(',');
  eval->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
  add_match_options(eval, opts);

  SynthProfile synth = SynthProfile::desk_scale();
  auto* syn = app.add_subcommand("synth", "Write a synthetic minutiae database");
  syn->add_option("-o,--output", out_path, "Database directory")->required();
  syn->add_option("--seed", seed)->capture_default_str();
  syn->add_option("--fingers", synth.fingers)->check(CLI::NonNegativeNumber)->capture_default_str();
  syn->add_option("--images", synth.images)->check(CLI::NonNegativeNumber)->capture_default_str();
  syn->add_option("--z", synth.z)->capture_default_str();
  syn->add_option("--width", synth.width)->check(CLI::PositiveNumber)->capture_default_str();
  syn->add_option("--height", synth.height)->check(CLI::PositiveNumber)->capture_default_str();
  syn->add_option("--jitter", synth.noise.jitter_sigma)->capture_default_str();
  syn->add_option("--theta-sigma", synth.noise.theta_sigma)->capture_default_str();
  syn->add_option("--drop", synth.noise.drop_prob)->capture_default_str();
  syn->add_option("--spurs", synth.noise.spur_count)->capture_default_str();
  double rot_deg = rad_to_deg(synth.noise.rot_range);
  syn->add_option("--rot-deg", rot_deg)->capture_default_str();
  syn->add_option("--trans", synth.noise.trans_range)->capture_default_str();
  syn->add_option("--quality-sigma", synth.noise.quality_sigma)->capture_default_str();
  std::string synth_profile = "synthetic";
  syn->add_option("--profile", synth_profile)->check(CLI::IsMember({"synthetic"}));

  BenchConfig bench;
  std::string bench_profile = "verifinger";
  std::string bench_db;
  auto* ben = app.add_subcommand("bench", "Time M and baseline G pipelines and print the analytic cost model");
  ben->add_option("--profile", bench_profile)->check(CLI::IsMember({"mcyt", "verifinger", "synthetic"}))->capture_default_str();
  ben->add_option("--z", bench.z)->capture_default_str();
  ben->add_option("--repeats", bench.repeats)->capture_default_str();
  ben->add_option("--warmup", bench.warmup)->capture_default_str();
  ben->add_option("--n-phi", bench.n_phi)->capture_default_str();
  ben->add_option("--seed", bench.seed)->capture_default_str();
  ben->add_option("--db", bench_db, "Use the first images of this database");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*tpl) return cmd_template(in_a, out_path, family_name, opts);
    if (*match) return cmd_match(in_a, in_b, opts);
    if (*eval) return cmd_eval(in_a, out_path, seed, persons, opts);
    if (*syn) {
      synth.noise.rot_range = deg_to_rad(rot_deg);
      try {
        synth.noise.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_database(out_path, generate_database(synth, seed));
      return 0;
    }
    if (*ben) {
      bench.profile = profile_by_name(bench_profile).radial;
      if (!bench_db.empty()) bench.database = bench_db;
      std::cout << format_bench(run_bench(bench));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
