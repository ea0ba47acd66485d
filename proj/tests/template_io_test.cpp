#include "pairspec/template_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "pairspec/errors.hpp"
#include "test_support.hpp"

namespace pairspec {
namespace {

StoredTemplate random_spectral(std::mt19937_64& rng, Family family, Variant variant) {
  const MinutiaSet s = testing::random_set(rng, 20);
  return {compute_template(s, variant, default_grid(family, variant, RadialProfile::Mcyt)), family, "1_2_3.xyt"};
}

// Bit-exact round trip for arbitrary doubles, including subnormals and
// values with long decimal expansions.
TEST(TemplateIo, RoundTripIsBitExact) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (Family f : {Family::L, Family::M}) {
    for (Variant v : {Variant::Location, Variant::LocationOrientation}) {
      StoredTemplate t = random_spectral(rng, f, v);
      auto& values = std::get<SpectralTemplate>(t.value).values;
      values(0, 0) = Complex(4.9406564584124654e-324, -0.1);
      values(0, 1) = Complex(u(rng) / 3.0, 1.0 / 3.0);
      const auto back = parse_templates(format_template(t));
      ASSERT_EQ(back.size(), 1u);
      EXPECT_EQ(back[0].family, f);
      EXPECT_EQ(back[0].source, "1_2_3.xyt");
      EXPECT_EQ(back[0].spectral(), t.spectral());
      EXPECT_EQ(format_template(back[0]), format_template(t));
    }
  }
}

TEST(TemplateIo, BaselineRoundTrip) {
  std::mt19937_64 rng(2);
  const MinutiaSet s = testing::random_set(rng, 10);
  const BaselineGrid grid = default_baseline_grid(8, 16);
  StoredTemplate t{compute_G(s, grid, BaselineVariant::Orientation), Family::M, ""};
  const auto back = parse_templates(format_template(t));
  ASSERT_EQ(back.size(), 1u);
  ASSERT_TRUE(back[0].is_baseline());
  EXPECT_EQ(back[0].baseline(), t.baseline());
  EXPECT_EQ(back[0].source, "");
}

TEST(TemplateIo, MultipleBlocksAndFiles) {
  std::mt19937_64 rng(3);
  std::vector<StoredTemplate> blocks{random_spectral(rng, Family::M, Variant::Location),
                                     random_spectral(rng, Family::M, Variant::LocationOrientation)};
  const auto path = std::filesystem::temp_directory_path() / "pairspec_tpl_test.tpl";
  write_templates(path, blocks);
  EXPECT_TRUE(looks_like_template_file(path));
  const auto back = read_templates(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].spectral(), blocks[0].spectral());
  EXPECT_EQ(back[1].spectral(), blocks[1].spectral());
  std::filesystem::remove(path);
}

TEST(TemplateIo, HeaderLayout) {
  const MinutiaSet s({Minutia(0, 0, 0, 80), Minutia(3, 4, 0, 80)}, 326, 357);
  const GridSpec g(GridKind::RadialDirect, {2}, {5.0}, 2.3);
  const std::string text = format_template({compute_M(s, Variant::Location, g), Family::M, "a.xyt"});
  EXPECT_EQ(text.substr(0, text.find("data")),
            "#pairspec-template\nfamily M\nvariant LOCATION\nq 2\nradial 5\nsigma 2.2999999999999998\nsource a.xyt\n");
  EXPECT_NE(text.find("data 1\n2 5 "), std::string::npos);
  EXPECT_EQ(text.substr(text.size() - 4), "end\n");
}

TEST(TemplateIo, Errors) {
  std::mt19937_64 rng(4);
  const std::string good = format_template(random_spectral(rng, Family::M, Variant::Location));
  EXPECT_THROW(parse_templates(""), ParseError);
  EXPECT_THROW(parse_templates("garbage\n"), ParseError);
  EXPECT_THROW(parse_templates(good.substr(0, good.size() - 4)), ParseError);  // missing end
  std::string bad_family = good;
  bad_family.replace(bad_family.find("family M"), 8, "family X");
  EXPECT_THROW(parse_templates(bad_family), ParseError);
  std::string bad_count = good;
  bad_count.replace(bad_count.find("data 160"), 8, "data 161");
  EXPECT_THROW(parse_templates(bad_count), ParseError);
  std::string bad_row = good;
  bad_row.replace(bad_row.find("\n2 16 "), 6, "\n4 16 ");
  EXPECT_THROW(parse_templates(bad_row), ParseError);
  EXPECT_THROW(read_templates("/nonexistent/pairspec.tpl"), ParseError);
}

}  // namespace
}  // namespace pairspec
