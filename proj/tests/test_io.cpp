#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "testkit.hpp"

using namespace cmvkit;
using io::json;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("cmvkit_test_io_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Json, ComplexAsPair) {
  EXPECT_EQ(io::to_json(complex(0.5, -2.0)).dump(), "[0.5,-2.0]");
  EXPECT_EQ(io::complex_from_json(json::parse("[1, 2]")), complex(1.0, 2.0));
  EXPECT_THROW(io::complex_from_json(json::parse("[1]")), io::format_error);
  EXPECT_THROW(io::complex_from_json(json::parse("{\"re\": 1}")), io::format_error);
}

TEST(Json, WindowRoundTrip) {
  testkit::Rng rng(1);
  const auto w = testkit::random_window(rng, 1, 9);
  const auto back = io::window_from_json(json::parse(io::to_json(w).dump()));
  EXPECT_TRUE(back == w);
  EXPECT_EQ(back.cut_left(), w.cut_left());
  const VerblunskyWindow bare(2, {0.1, complex(0.0, 0.2)});
  EXPECT_FALSE(io::window_from_json(io::to_json(bare)).has_cuts());
}

TEST(Json, WindowSchemaErrors) {
  auto j = io::to_json(VerblunskyWindow(1, {0.1, 0.2, 0.3}));
  j["kmax"] = 4;
  EXPECT_THROW(io::window_from_json(j), input_error);
  EXPECT_THROW(io::window_from_json(json::parse("{\"kmin\": 0}")), io::format_error);
  EXPECT_THROW(io::window_from_json(json::parse("[]")), io::format_error);
  auto big = io::to_json(VerblunskyWindow(1, {0.1}));
  big["alpha"][0] = json::array({1.0, 0.5});
  EXPECT_THROW(io::window_from_json(big), domain_error);
}

TEST(Json, MomentsAndSeriesRoundTrip) {
  const MomentSequence mu({complex(0.1, 0.2), complex(-0.3, 0.0)});
  EXPECT_TRUE(io::moments_from_json(io::to_json(mu)) == mu);
  const TaylorSeries s({1.0, complex(0.0, 2.0), -3.0});
  const auto back = io::series_from_json(io::to_json(s));
  EXPECT_EQ(back.order(), 2);
  for (int k = 0; k <= 2; ++k) EXPECT_EQ(back[k], s[k]);
}

TEST(Json, ForwardDataRoundTripIsExact) {
  testkit::Rng rng(2);
  const auto w = testkit::random_window(rng, 0, 20);
  const auto f = forward(w, 0, 6);
  const auto text = io::to_json(f).dump();
  const auto g = io::forward_from_json(json::parse(text));
  EXPECT_EQ(io::to_json(g).dump(), text);
  for (auto route : {Route::moments, Route::right_m, Route::left_M, Route::full_gh}) {
    const auto a = reconstruct(f, route, 5).recovered;
    const auto b = reconstruct(g, route, 5).recovered;
    EXPECT_TRUE(a == b) << to_string(route);
  }
}

TEST(Json, RouteAndKindNames) {
  EXPECT_EQ(io::route_from_string("left_M"), Route::left_M);
  EXPECT_EQ(io::route_from_string("full-gg"), Route::full_gg);
  EXPECT_EQ(io::kind_from_string("half-right"), UniquenessKind::half_right);
  EXPECT_EQ(io::kind_from_string("full_gh"), UniquenessKind::full_gh);
  EXPECT_THROW(io::route_from_string("sideways"), io::format_error);
  EXPECT_THROW(io::kind_from_string("quarter"), io::format_error);
}

TEST(Json, ReportDocuments) {
  ReconstructionReport rep{VerblunskyWindow(1, {0.25}), Route::right_m, std::nullopt, {"n"}};
  auto j = io::to_json(rep);
  EXPECT_TRUE(j["residuals"].is_null());
  EXPECT_EQ(j["route"], "right_m");
  rep.compare_with(VerblunskyWindow(1, {0.5}));
  j = io::to_json(rep);
  EXPECT_EQ(j["residuals"][0][0].get<double>(), -0.25);

  UniquenessReport u;
  u.coefficient_window = {1, 4};
  j = io::to_json(u);
  EXPECT_EQ(j["coefficient_window"], json::array({1, 4}));
  EXPECT_EQ(j["kind"], "half_right");
  EXPECT_TRUE(j["holds"].get<bool>());
}

TEST(Cli, ReadJsonErrors) {
  std::istringstream truncated("{\"kmin\": 1, \"alpha\": [");
  EXPECT_THROW(cli::read_json("-", truncated), io::format_error);
  EXPECT_THROW(cli::read_json("/nonexistent/cmvkit.json"), input_error);
}

TEST(Cli, GenIsDeterministic) {
  cli::GenOptions opt;
  opt.seed = 42;
  std::ostringstream a, b;
  cli::cmd_gen(opt, a);
  cli::cmd_gen(opt, b);
  EXPECT_EQ(a.str(), b.str());
  opt.seed = 43;
  std::ostringstream c;
  cli::cmd_gen(opt, c);
  EXPECT_NE(a.str(), c.str());
}

TEST(Cli, GenRespectsBoundsAndAlignment) {
  for (int k0 : {-3, 0, 1, 4}) {
    cli::GenOptions opt;
    opt.k0 = k0;
    opt.amax = 0.4;
    const auto w = cli::generate_window(opt);
    EXPECT_FALSE(is_odd(w.first_site()));
    EXPECT_LE(w.first_site(), k0 - 20);
    EXPECT_EQ(w.kmax(), k0 + 20);
    for (auto a : w.values()) EXPECT_LE(std::abs(a), 0.4);
  }
  cli::GenOptions zero;
  zero.amax = 0.0;
  const auto quiet = cli::generate_window(zero);
  for (auto a : quiet.values()) EXPECT_EQ(a, complex{});
  cli::GenOptions bad;
  bad.amax = 1.0;
  EXPECT_THROW(cli::generate_window(bad), domain_error);
  bad.amax = 0.5;
  bad.radius = 10;
  EXPECT_THROW(cli::generate_window(bad), domain_error);
}

TEST(Cli, ForwardFreeCase) {
  cli::GenOptions gen;
  gen.amax = 0.0;
  std::ostringstream window;
  cli::cmd_gen(gen, window);
  cli::ForwardOptions opt;
  opt.window = write_temp("free.json", window.str());
  std::ostringstream out, log;
  EXPECT_EQ(cli::cmd_forward(opt, out, log), cli::kOk);
  const auto f = io::forward_from_json(json::parse(out.str()));
  EXPECT_EQ(f.plus.m[0], complex(1.0));
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(f.plus.m[n], complex{});
  for (int n = 0; n <= 6; ++n) {
    EXPECT_EQ(f.green.g[n], complex{});
    EXPECT_EQ(f.green.h[n], complex{});
  }
  EXPECT_TRUE(log.str().empty());
}

TEST(Cli, GuardedMapsErrorClasses) {
  std::ostringstream log;
  EXPECT_EQ(cli::guarded([] { return 0; }, log), cli::kOk);
  EXPECT_EQ(cli::guarded([]() -> int { throw io::format_error("x"); }, log), cli::kInputError);
  EXPECT_EQ(cli::guarded([]() -> int { throw hypothesis_error("x"); }, log),
            cli::kNumericalError);
  EXPECT_NE(log.str().find("input error"), std::string::npos);
  EXPECT_NE(log.str().find("numerical error"), std::string::npos);
}

TEST(Cli, VerifyExitCodes) {
  cli::GenOptions gen;
  gen.seed = 7;
  const auto w = cli::generate_window(gen);
  const auto p1 = write_temp("w1.json", io::to_json(w).dump());
  const auto p2 = write_temp("w2.json", io::to_json(w.with(3, w[3] * 0.5)).dump());
  cli::VerifyOptions opt;
  opt.w1 = p1;
  opt.w2 = p2;
  std::ostringstream out, log;
  EXPECT_EQ(cli::cmd_verify(opt, out, log), cli::kOk);
  EXPECT_EQ(json::parse(out.str())["data_agreement_order"], 2);
  opt.kind = "nonsense";
  EXPECT_EQ(cli::guarded([&] { return cli::cmd_verify(opt, out, log); }, log), cli::kInputError);
}
