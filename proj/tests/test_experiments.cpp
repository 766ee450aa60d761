#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "padeclust/errors.hpp"
#include "padeclust/experiments.hpp"

using namespace padeclust;

namespace {

std::string csv(const Table& t) {
  std::ostringstream out;
  t.write_csv(out);
  return out.str();
}

ExperimentConfig small(ExperimentName name) {
  ExperimentConfig c = default_config(name);
  c.trials = 6;
  c.threads = 1;
  switch (name) {
    case ExperimentName::kEtClustering:
      c.m = {10, 20};
      c.n = {1, 2};
      break;
    case ExperimentName::kDiscreteExample:
      c.spec.M = 5;
      c.m = {20, 40};
      c.n = {3};
      break;
    case ExperimentName::kToeplitzAnticoncentration:
      c.n = {1, 3};
      break;
    case ExperimentName::kDetGrowth:
      c.m = {8, 16};
      break;
    case ExperimentName::kZeroRadius:
      c.N = 128;
      c.s = {4, 8};
      break;
    case ExperimentName::kPoleClustering:
      c.n = {4, 8};
      c.N = 128;
      break;
  }
  return c;
}

}  // namespace

TEST_CASE("experiment names round trip and unknown names list the valid ones") {
  for (const auto& name : experiment_names()) CHECK(experiment_name(parse_experiment(name)) == name);
  try {
    parse_experiment("et-clusterin");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const auto& name : experiment_names()) CHECK(msg.find(name) != std::string::npos);
  }
}

TEST_CASE("config JSON round trip preserves every field") {
  for (const auto& name : experiment_names()) {
    ExperimentConfig c = default_config(parse_experiment(name));
    c.seed = 0xFFFFFFFFFFFFFFFFull;
    c.trials = 17;
    c.threads = 3;
    const auto j = to_json(c);
    CHECK(j["schema_version"] == kConfigSchemaVersion);
    CHECK(to_json(config_from_json(j)) == j);
    CHECK(to_json(config_from_json(nlohmann::json::parse(j.dump()))) == j);
  }
}

TEST_CASE("config JSON falls back to defaults and rejects bad input") {
  const auto c = config_from_json(nlohmann::json{{"experiment", "det-growth"}, {"trials", 5}});
  CHECK(c.name == ExperimentName::kDetGrowth);
  CHECK(c.trials == 5);
  CHECK(c.m == default_config(ExperimentName::kDetGrowth).m);

  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"trials", 5}}), ConfigError);
  CHECK(config_from_json(nlohmann::json{{"trials", 5}}, ExperimentName::kZeroRadius).name ==
        ExperimentName::kZeroRadius);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "nope"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "det-growth"}, {"schema_version", 2}}),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "det-growth"}, {"trials", 0}}),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "det-growth"}, {"trials", "ten"}}),
                  ConfigError);
  CHECK_THROWS_AS(
      config_from_json(nlohmann::json{{"experiment", "det-growth"}, {"precision", "quad"}}),
      ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "det-growth"},
                                                  {"distribution", {{"kind", "cauchy"}}}}),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "et-clustering"},
                                                  {"N", 10},
                                                  {"m", {10}},
                                                  {"n", {1}}}),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "discrete-example"},
                                                  {"distribution", {{"kind", "gaussian"}}}}),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "zero-radius"}, {"r", {1.0}}}),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"experiment", "zero-radius"}, {"s", {1}}}),
                  ConfigError);
}

TEST_CASE("format_number is shortest round trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-300) == "-2.5e-300");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(-HUGE_VAL) == "-inf");
  const double third = 1.0 / 3.0;
  CHECK(std::stod(format_number(third)) == third);
}

TEST_CASE("Table CSV round trip") {
  Table t;
  t.columns = {"a", "b", "c"};
  t.rows = {{0.0, 1.0 / 3.0, std::numeric_limits<double>::quiet_NaN()},
            {-1e-310, HUGE_VAL, 7.0}};
  std::istringstream in(csv(t));
  const Table back = Table::read_csv(in);
  CHECK(back.columns == t.columns);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0][1] == t.rows[0][1]);
  CHECK(std::isnan(back.rows[0][2]));
  CHECK(back.rows[1][0] == t.rows[1][0]);
  CHECK(back.rows[1][1] == HUGE_VAL);
  CHECK(csv(back) == csv(t));
  CHECK_THROWS_AS(t.column("d"), MissingData);

  std::istringstream empty("");
  CHECK_THROWS_AS(Table::read_csv(empty), MissingData);
  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(Table::read_csv(ragged), MissingData);
  std::istringstream text("a\nx\n");
  CHECK_THROWS_AS(Table::read_csv(text), MissingData);
}

TEST_CASE("median and affine_fit") {
  CHECK(std::isnan(median({})));
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  const auto fit = affine_fit({1.0, 2.0, 3.0, 4.0}, {3.0, 5.0, 7.0, 9.0});
  CHECK(fit[0] == doctest::Approx(1.0));
  CHECK(fit[1] == doctest::Approx(2.0));
  CHECK(fit[2] == doctest::Approx(1.0));
  CHECK(std::isnan(affine_fit({1.0}, {1.0})[1]));
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (std::size_t threads : {1, 2, 5}) {
    std::vector<std::atomic<int>> hits(101);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(50, threads,
                                 [](std::size_t i) {
                                   if (i == 17) throw NonConvergence("boom");
                                 }),
                    NonConvergence);
  }
  CHECK(resolve_threads(4) == 4);
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("every experiment runs at small scale with one row per trial") {
  for (const auto& name : experiment_names()) {
    CAPTURE(name);
    const ExperimentConfig c = small(parse_experiment(name));
    const RunResult r = run_experiment(c);
    CHECK(r.summary["schema_version"] == kSummarySchemaVersion);
    CHECK(r.summary["experiment"] == name);
    for (const char* key : {"trials", "degenerate", "excluded", "wall_time_seconds"}) {
      CHECK(r.summary.contains(key));
    }
    CHECK(r.trials.columns.front() == "trial_index");
    for (const auto& row : r.trials.rows) CHECK(row.size() == r.trials.columns.size());
    CHECK_FALSE(r.invariant_breach());
  }
}

TEST_CASE("trials.csv is byte-identical across thread counts") {
  for (const auto& name : experiment_names()) {
    CAPTURE(name);
    ExperimentConfig c = small(parse_experiment(name));
    const std::string one = csv(run_experiment(c).trials);
    c.threads = 3;
    CHECK(csv(run_experiment(c).trials) == one);
    c.seed = 2;
    CHECK(csv(run_experiment(c).trials) != one);
  }
}

TEST_CASE("discrete M=2, n=8, m=64 reports a positive degenerate fraction") {
  ExperimentConfig c = default_config(ExperimentName::kDiscreteExample);
  c.spec.M = 2;
  c.m = {64};
  c.n = {8};
  // singular with probability about 0.0014, so a few thousand trials are needed
  c.trials = 5000;
  const RunResult r = run_experiment(c);
  CHECK(r.summary["degenerate"].get<std::size_t>() > 0);
  CHECK(r.summary["degenerate_fraction"].get<double>() > 0.0);
  CHECK(r.summary["degenerate_fraction"].get<double>() < 1.0);
  CHECK(r.trials.rows.size() == 5000);
}

TEST_CASE("n=1 anticoncentration matches 2 Phi(eps) - 1") {
  ExperimentConfig c = default_config(ExperimentName::kToeplitzAnticoncentration);
  c.n = {1};
  c.epsilon = {0.05, 0.2, 1.0};
  c.trials = 20000;
  const RunResult r = run_experiment(c);
  const boost::math::normal_distribution<double> g;
  for (const auto& cell : r.summary["cells"]) {
    const double eps = cell["epsilon"];
    const double exact = 2.0 * boost::math::cdf(g, eps) - 1.0;
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(c.trials));
    CHECK(std::abs(cell["probability"].get<double>() - exact) <= 4.0 * se);
    CHECK(cell["holds_within_3se"] == true);
  }
}

TEST_CASE("det-growth with n=1 tracks |a_m|^(1/m)") {
  ExperimentConfig c = default_config(ExperimentName::kDetGrowth);
  c.n = {1};
  c.m = {8, 64, 512};
  c.trials = 40;
  const RunResult r = run_experiment(c);
  CHECK(r.summary["all_finite_positive"] == true);
  const auto med = r.summary["median_deviation"].get<std::vector<double>>();
  CHECK(med.back() < med.front());
}

TEST_CASE("et-clustering summary exposes the delta^4 failure fraction") {
  ExperimentConfig c = small(ExperimentName::kEtClustering);
  c.m = {200};
  c.n = {2};
  c.trials = 40;
  const RunResult r = run_experiment(c);
  const auto& cell = r.summary["cells"][0];
  CHECK(cell["fraction_et_log_over_m_above_delta4"].get<double>() < 0.5);
  CHECK(r.summary["degenerate"] == 0);
}

TEST_CASE("pole-clustering with m=0 gives no clustering verdict") {
  ExperimentConfig c = small(ExperimentName::kPoleClustering);
  c.m = {0};
  const RunResult r = run_experiment(c);
  CHECK(r.summary["non_increasing"].is_null());
}
