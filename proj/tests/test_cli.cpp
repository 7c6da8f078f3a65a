#include <gtest/gtest.h>

#include "padic/cli.hpp"

using namespace padic;

namespace {

RunConfig config(const std::string& command, std::map<std::string, std::string> params) {
  RunConfig c;
  c.command = command;
  c.params = std::move(params);
  return c;
}

std::vector<RunConfig> sample_configs() {
  return {
      config("orbvol", {{"d", "2"}, {"weights", "1,1"}, {"q", "5"}, {"k", "8"}}),
      config("orbvol", {{"group", "Z/2 x Z/2"}, {"characters", "1,0;0,1"}, {"q", "5"}}),
      config("stringy", {{"d", "3"}, {"weights", "1,2"}, {"q", "7"}}),
      config("stringy", {{"d", "2"}, {"weights", "1,1"}, {"q", "5"}, {"gerbe_form", "1"}, {"gerbe_order", "2"}}),
      config("weil", {{"model", "x,y: x^2 + y^2 - 1"}, {"q", "5"}, {"k", "3"}}),
      config("twist-count", {{"d", "2"}, {"weights", "1"}, {"q", "5"}, {"tau", "1"}, {"m", "1"}}),
      config("twist-count", {{"toy", "swap2"}}),
      config("euler", {{"curve", "0,0,0,0,1"}, {"q", "5"}, {"n", "3"}}),
      config("selfdual", {{"curve", "0,0,0,1,0"}, {"q", "5"}, {"n", "2"}}),
      config("mirror-sim", {{"curve", "0,0,0,1,0"}, {"q", "5"}, {"n", "2"}, {"base_size", "8"}, {"seed", "42"}}),
      config("suite", {{"filter", "pairing"}}),
  };
}

}  // namespace

TEST(RunConfigFile, ParsesCommentsAndRejectsUnknownKeys) {
  const auto c = RunConfig::parse_text("# volume\nversion = 1\ncommand = orbvol\nd = 2  # order\nweights = 1,1\nq = 5\n");
  EXPECT_EQ(c.command, "orbvol");
  EXPECT_EQ(c.params.at("d"), "2");
  EXPECT_EQ(c.params.at("weights"), "1,1");
  EXPECT_THROW(RunConfig::parse_text("version = 1\ncommand = orbvol\ncolour = red\n"), Error);
  EXPECT_THROW(RunConfig::parse_text("version = 2\ncommand = orbvol\n"), Error);
  EXPECT_THROW(RunConfig::parse_text("command = orbvol\n"), Error);
  EXPECT_THROW(RunConfig::parse_text("version = 1\ncommand = orbvol\nd 2\n"), Error);
  EXPECT_THROW(RunConfig::parse_text("version = 1\ncommand = orbvol\nd = 2\nd = 3\n"), Error);
}

TEST(RunConfigFile, TextAndJsonRoundTrip) {
  for (const auto& c : sample_configs()) {
    const auto from_text = RunConfig::parse_text(c.to_text());
    EXPECT_EQ(from_text.params, c.params);
    EXPECT_EQ(from_text.command, c.command);
    const auto from_json = RunConfig::from_json(c.to_json());
    EXPECT_EQ(from_json.params, c.params);
  }
}

TEST(Run, EveryCommandPassesOnSampleInputs) {
  for (const auto& c : sample_configs()) {
    const auto r = run(c);
    EXPECT_EQ(r.code, ExitCode::Ok) << c.command << " " << r.error << "\n" << r.report.to_json(false).dump(2);
  }
}

TEST(Run, InputsSectionReproducesTheReport) {
  for (const auto& c : sample_configs()) {
    const auto first = run(c);
    const auto again = run(RunConfig::from_json(first.report.inputs));
    EXPECT_EQ(first.report.to_json(false).dump(), again.report.to_json(false).dump()) << c.command;
  }
}

TEST(Run, OrbvolReportsSixFifths) {
  const auto r = run(sample_configs().front());
  EXPECT_EQ(r.report.outputs["total_volume"], to_json(QExp(Rational(6, 5))));
  EXPECT_EQ(r.report.outputs["sectors"].size(), 2u);
  EXPECT_EQ(r.report.precision_used, 8);
}

TEST(Run, InvalidInputsMapToExitTwo) {
  const std::vector<RunConfig> bad{
      config("orbvol", {{"d", "2"}, {"weights", "1,x"}, {"q", "5"}}),
      config("orbvol", {{"d", "2"}, {"weights", "1,1"}, {"q", "6"}}),
      config("orbvol", {{"d", "3"}, {"weights", "1"}, {"q", "5"}}),
      config("orbvol", {{"d", "2"}, {"weights", "1,1"}, {"q", "5"}, {"k", "2"}}),
      config("orbvol", {{"weights", "1,1"}, {"q", "5"}}),
      config("weil", {{"model", "x,y: y^2 - x^3"}, {"q", "5"}}),
      config("euler", {{"curve", "0,0,0,0,0"}, {"q", "5"}, {"n", "2"}}),
      config("euler", {{"curve", "0,0,0,1"}, {"q", "5"}, {"n", "2"}}),
      config("mirror-sim", {{"curve", "0,0,0,1,0"}, {"q", "5"}, {"n", "5"}}),
      config("nonsense", {}),
  };
  for (const auto& c : bad) {
    const auto r = run(c);
    EXPECT_EQ(r.code, ExitCode::InvalidInput) << c.to_text();
    EXPECT_FALSE(r.error.empty());
  }
}

TEST(Run, TimingOnlyWhenRequested) {
  const auto r = run(sample_configs().front());
  EXPECT_FALSE(r.report.to_json(false).contains("timing_seconds"));
  EXPECT_TRUE(r.report.to_json(true).contains("timing_seconds"));
}

TEST(Parallel, ResultsIndependentOfWorkerCount) {
  auto square = [](std::size_t i) { return static_cast<std::int64_t>(i * i); };
  setenv("PADIC_STRINGY_THREADS", "1", 1);
  const auto serial = parallel_map<std::int64_t>(97, square);
  setenv("PADIC_STRINGY_THREADS", "4", 1);
  const auto threaded = parallel_map<std::int64_t>(97, square);
  unsetenv("PADIC_STRINGY_THREADS");
  EXPECT_EQ(serial, threaded);
  for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i], static_cast<std::int64_t>(i * i));
}
