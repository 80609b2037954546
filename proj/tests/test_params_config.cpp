#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "powereq/config.hpp"
#include "powereq/csv.hpp"
#include "powereq/errors.hpp"
#include "powereq/params.hpp"

using namespace powereq;

TEST(Params, BaselineAccepted) {
  const ModelParams p = baseline_params();
  EXPECT_DOUBLE_EQ(p.tech().sigma, 0.6);
  EXPECT_DOUBLE_EQ(p.tech().alpha, 1.4);
  EXPECT_DOUBLE_EQ(p.tech().a_k, 0.022);
  EXPECT_DOUBLE_EQ(p.tech().q_rel, 0.35);
  EXPECT_DOUBLE_EQ(p.pref().rho, 0.0222);
  EXPECT_DOUBLE_EQ(p.pref().gamma_f, 0.45);
  EXPECT_DOUBLE_EQ(p.match().iota, 1.25);
  EXPECT_DOUBLE_EQ(p.match().lambda0, 0.02);
  EXPECT_DOUBLE_EQ(p.match().xi, 8.0);
  EXPECT_DOUBLE_EQ(p.inst().b, 0.06);
  EXPECT_DOUBLE_EQ(p.inst().p_union, 0.25);
  EXPECT_DOUBLE_EQ(p.tech().g, 0.0017);
  EXPECT_NEAR(p.tech().delta, 0.00565414538740528, 1e-15);
  EXPECT_DOUBLE_EQ(p.task_creation_rate(), 0.0017 / 1.4);
}

TEST(Params, RejectsZeroSigma) {
  ParamBundle b = baseline_bundle();
  b.tech.sigma = 0.0;
  try {
    validate_params(b);
    FAIL() << "expected rejection";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "sigma");
    EXPECT_NE(std::string(e.what()).find("sigma must be positive"), std::string::npos);
  }
}

TEST(Params, RejectsAutomationAboveOne) {
  ParamBundle b = baseline_bundle();
  b.tech.m = 1.2;
  try {
    validate_params(b);
    FAIL() << "expected rejection";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "m");
    EXPECT_NE(std::string(e.what()).find("m must lie in [0,1]"), std::string::npos);
  }
}

TEST(Params, DomainChecks) {
  auto rejects = [](auto mutate) {
    ParamBundle b = baseline_bundle();
    mutate(b);
    EXPECT_THROW(validate_params(b), ValidationError);
  };
  rejects([](ParamBundle& b) { b.tech.delta = 1.0; });
  rejects([](ParamBundle& b) { b.tech.delta = 0.0; });
  rejects([](ParamBundle& b) { b.tech.alpha = -1.0; });
  rejects([](ParamBundle& b) { b.tech.a_k = 0.0; });
  rejects([](ParamBundle& b) { b.tech.q_rel = 0.0; });
  rejects([](ParamBundle& b) { b.tech.m = -0.01; });
  rejects([](ParamBundle& b) { b.inst.p_union = 1.5; });
  rejects([](ParamBundle& b) { b.inst.t_w = -1.0; });
  rejects([](ParamBundle& b) { b.match.iota = 0.0; });
  rejects([](ParamBundle& b) { b.tech.sigma = std::nan(""); });
}

TEST(Params, StationarityRequired) {
  ParamBundle b = baseline_bundle();
  b.tech.m_dot = 0.001;
  const ModelParams p = validate_params(b);
  EXPECT_THROW(require_stationary(p), ValidationError);
  EXPECT_NO_THROW(require_stationary(baseline_params()));
}

TEST(Params, RateConversionRoundTrip) {
  for (double a : {0.0, 0.02, 0.07, 0.5}) EXPECT_NEAR(monthly_to_annual(annual_to_monthly(a)), a, 1e-15);
  EXPECT_NEAR(std::pow(1.0 + annual_to_monthly(0.07), 12.0), 1.07, 1e-14);
}

TEST(Params, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.00565414538740528}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Config, KeyValueRoundTrip) {
  ParamBundle b = baseline_bundle();
  b.tech.sigma = 1.0 / 3.0;
  b.inst.t_w = 4.123456789012345;
  const ModelParams p = validate_params(b);
  const std::string text = to_key_value(p);
  const ConfigDocument doc = ConfigDocument::parse(text);
  const ParamBundle back = apply_params(doc, baseline_bundle());
  EXPECT_EQ(flatten(back), flatten(b));
}

TEST(Config, SectionsAndComments) {
  const auto doc = ConfigDocument::parse(
      "# header\n[technology]\nsigma = 0.8 ; trailing\ndelta_annual = 0.07\n\n[institutions]\nt_w=6\n");
  const ParamBundle b = apply_params(doc, baseline_bundle());
  EXPECT_DOUBLE_EQ(b.tech.sigma, 0.8);
  EXPECT_DOUBLE_EQ(b.inst.t_w, 6.0);
  EXPECT_DOUBLE_EQ(b.tech.delta, annual_to_monthly(0.07));
}

TEST(Config, RateNeedsUnitSuffix) {
  const auto doc = ConfigDocument::parse("[technology]\ndelta = 0.07\n");
  EXPECT_THROW(apply_params(doc, baseline_bundle()), SchemaError);
  const auto ok = ConfigDocument::parse("[technology]\ndelta_monthly = 0.006\n");
  EXPECT_DOUBLE_EQ(apply_params(ok, baseline_bundle()).tech.delta, 0.006);
}

TEST(Config, UnknownKeyReportsLine) {
  const auto doc = ConfigDocument::parse("[technology]\nsigma = 0.6\nsigm = 0.7\n");
  try {
    apply_params(doc, baseline_bundle());
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("sigm"), std::string::npos);
  }
}

TEST(Config, MalformedLines) {
  EXPECT_THROW(ConfigDocument::parse("[technology\nsigma=1\n"), SchemaError);
  EXPECT_THROW(ConfigDocument::parse("sigma = 1\n"), SchemaError);
  EXPECT_THROW(ConfigDocument::parse("[technology]\nsigma\n"), SchemaError);
  const auto doc = ConfigDocument::parse("[technology]\nsigma = abc\n");
  EXPECT_THROW(apply_params(doc, baseline_bundle()), SchemaError);
}

TEST(Config, UnknownSectionRejected) {
  const auto doc = ConfigDocument::parse("[technology]\nsigma=1\n[bogus]\nx=1\n");
  EXPECT_THROW(doc.require_known_sections({"technology"}), SchemaError);
  EXPECT_NO_THROW(doc.require_known_sections({"technology", "bogus"}));
}

TEST(Config, OverridesLayerOverFile) {
  const auto path = std::filesystem::temp_directory_path() / "powereq_cfg_test.cfg";
  {
    std::ofstream f(path);
    f << "[institutions]\nt_w = 5\n[run]\ntolerance = 1e-11\n";
  }
  const RunConfig rc = load_run_config(path.string(), {"institutions.t_w=7", "technology.sigma=0.9"});
  EXPECT_DOUBLE_EQ(rc.params.inst().t_w, 7.0);
  EXPECT_DOUBLE_EQ(rc.params.tech().sigma, 0.9);
  EXPECT_DOUBLE_EQ(rc.tolerance, 1e-11);
  std::filesystem::remove(path);
  EXPECT_THROW(load_run_config("", {"nodot=1"}), SchemaError);
  EXPECT_THROW(load_run_config("", {"technology.sigma=0"}), ValidationError);
  EXPECT_THROW(load_run_config("/nonexistent/x.cfg", {}), Error);
}

TEST(Csv, ParseAndColumns) {
  const CsvTable t = parse_csv("# note\na,b\n1,2\n\n3,\n");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_EQ(t.rows[1][1], "");
  EXPECT_EQ(t.lines[1], 5);
  EXPECT_FALSE(t.find_column("c").has_value());
  EXPECT_THROW(t.column("c"), SchemaError);
  EXPECT_THROW(parse_csv("a,b\n1\n"), SchemaError);
  EXPECT_THROW(parse_csv(""), SchemaError);
}

TEST(Csv, WriterRoundTripsDoubles) {
  CsvWriter w({"x", "y"});
  const double x = 0.1 + 0.2;
  w.add_row({CsvWriter::cell(x), CsvWriter::cell(std::optional<double>{})});
  const CsvTable t = parse_csv(w.text());
  EXPECT_EQ(std::stod(t.rows[0][0]), x);
  EXPECT_EQ(t.rows[0][1], "");
}

TEST(Csv, AtomicWriteLeavesNoTemp) {
  const auto dir = std::filesystem::temp_directory_path() / "powereq_atomic";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  write_output_atomic(path.string(), "a\n1\n");
  std::ifstream f(path);
  std::string s((std::istreambuf_iterator<char>(f)), {});
  EXPECT_EQ(s, "a\n1\n");
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files += e.is_regular_file();
  EXPECT_EQ(files, 1);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(write_output_atomic("/nonexistent_dir/x.csv", "a"), Error);
}
