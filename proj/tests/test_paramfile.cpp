#include <gtest/gtest.h>

#include "centerkit/cli/paramfile.hpp"
#include "centerkit/cli/portrait.hpp"
#include "support.hpp"

using namespace centerkit;
using namespace centerkit::cli;
using R = Rational;

TEST(ParamFile, ExactFractionsAndDecimals) {
  const auto pf = parse_param_text(R"({"schema": 1, "form": "normalized",
      "params": {"a21": "3/10", "b11": "-0.2", "a02": 1, "a03": 0.1}})");
  ASSERT_FALSE(pf.raw());
  const auto& p = std::get<ReversibleParams<R>>(pf.params);
  EXPECT_EQ(p.a21, R(3, 10));
  EXPECT_EQ(p.b11, R(-1, 5));
  EXPECT_EQ(p.a02, R(1));
  EXPECT_EQ(p.a03, R(1, 10));
  EXPECT_TRUE(p.a20.is_zero());
}

TEST(ParamFile, DefaultsAndOptions) {
  const auto pf = parse_param_text(R"({"params": {}, "options": {"order": 5, "radii": [0.1], "rtol": 1e-11}})");
  EXPECT_EQ(pf.options.order, 5);
  EXPECT_EQ(pf.options.radii, std::vector<double>{0.1});
  EXPECT_DOUBLE_EQ(pf.options.rtol, 1e-11);
  EXPECT_EQ(pf.options.threads, 1u);
}

TEST(ParamFile, RawForm) {
  const auto pf = parse_param_text(R"({"schema": 1, "form": "raw", "params": {"a00": "-1/10", "b10": "1/5"}})");
  ASSERT_TRUE(pf.raw());
  const auto& r = std::get<ReversibleParamsRaw<R>>(pf.params);
  EXPECT_EQ(r.a00, R(-1, 10));
  EXPECT_EQ(r.b10, R(1, 5));
  EXPECT_THROW(parse_param_text(R"({"form": "raw", "params": {"a99": "1"}})"), ParamFileError);
}

TEST(ParamFile, ShapeErrors) {
  EXPECT_THROW(parse_param_text("{"), ParamFileError);
  EXPECT_THROW(parse_param_text("[]"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"schema": 2, "params": {}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"form": "other", "params": {}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"schema": 1})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"params": {"b21": "1"}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"params": {"a20": "1/0"}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"params": {"a20": "x"}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"params": {"a20": true}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"params": {}, "options": {"order": 1}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"params": {}, "options": {"radii": []}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"params": {}, "options": {"radii": "a"}})"), ParamFileError);
  EXPECT_THROW(parse_param_text(R"({"params": {}, "options": {"colour": 1}})"), ParamFileError);
}

TEST(ParamFile, RoundTrip) {
  centerkit::testing::Sampler s(701);
  for (int t = 0; t < 50; ++t) {
    ParamFile pf;
    pf.params = s.any(R(7));
    pf.options.order = 3 + t % 3;
    pf.options.radii = {0.01 * (t + 1), 0.2};
    const ParamFile back = parse_param_file(nlohmann::json::parse(to_json(pf).dump()));
    ASSERT_FALSE(back.raw());
    EXPECT_EQ(std::get<ReversibleParams<R>>(back.params), std::get<ReversibleParams<R>>(pf.params));
    EXPECT_EQ(back.options.order, pf.options.order);
    EXPECT_EQ(back.options.radii, pf.options.radii);
  }
  ParamFile raw;
  ReversibleParamsRaw<R> r;
  r.a00 = R(-7, 3);
  raw.params = r;
  const ParamFile back = parse_param_file(to_json(raw));
  ASSERT_TRUE(back.raw());
  EXPECT_EQ(std::get<ReversibleParamsRaw<R>>(back.params).a00, R(-7, 3));
}

TEST(ParamFile, ExtraTopLevelKeysAreIgnored) {
  const auto pf = parse_param_text(R"({"params": {"a20": "1"}, "report": {"stratum": "Focus"}})");
  EXPECT_EQ(std::get<ReversibleParams<R>>(pf.params).a20, R(1));
}

TEST(Portrait, SeedFanAndOutputs) {
  const NumericField f(unperturbed_field<R>());
  const auto seeds = portrait_seeds(f);
  EXPECT_EQ(seeds.size(), 16u);
  PortraitOptions po;
  po.t_max = 5.0;
  const auto orbits = trace_portrait(f, po);
  ASSERT_EQ(orbits.size(), seeds.size());
  for (const auto& o : orbits) {
    ASSERT_GT(o.points.size(), 2u);
    for (std::size_t i = 1; i < o.points.size(); ++i) EXPECT_GT(o.points[i].t, o.points[i - 1].t);
  }
  std::ostringstream svg, csv;
  write_portrait_svg(svg, orbits, saddle_x(f));
  write_portrait_csv(csv, orbits);
  EXPECT_NE(svg.str().find("viewBox=\"-3 -3 6 6\""), std::string::npos);
  EXPECT_EQ(csv.str().rfind("orbit,kind,t,x,y\n", 0), 0u);
}
