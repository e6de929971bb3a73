#include "bis/json_io.hpp"

#include <doctest.h>

using namespace bis;
using nlohmann::json;

TEST_CASE("model files parse into the right variants") {
  const auto binary = model_from_json(
      json::parse(R"({"kind":"binary","p_e":0.03,"p_d":0.1})"));
  REQUIRE(std::holds_alternative<BinaryBIS>(binary));
  CHECK(std::get<BinaryBIS>(binary).p_e == 0.03);

  const auto gaussian = model_from_json(
      json::parse(R"({"kind":"gaussian","rho1":0.9,"rho2":-0.8})"));
  REQUIRE(std::holds_alternative<GaussianBIS>(gaussian));
  CHECK(std::get<GaussianBIS>(gaussian).rho2 == -0.8);

  const auto discrete = model_from_json(json::parse(R"({
    "kind": "discrete",
    "px": [0.25, 0.75],
    "enrollment": [[0.9, 0.1], [0.2, 0.8]],
    "identification": [[1.0, 0.0], [0.0, 1.0]]
  })"));
  REQUIRE(std::holds_alternative<DiscreteBIS>(discrete));
  CHECK(std::get<DiscreteBIS>(discrete).enrollment.at(1, 0) == 0.2);

  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"unknown"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"binary","p_e":0.03})")),
                  std::invalid_argument);
  // Distribution and stochasticity checks still apply behind the schema.
  CHECK_THROWS_AS(model_from_json(json::parse(R"({
    "kind": "discrete", "px": [0.5, 0.6],
    "enrollment": [[1.0, 0.0], [0.0, 1.0]],
    "identification": [[1.0, 0.0], [0.0, 1.0]]
  })")),
                  std::invalid_argument);
}

TEST_CASE("rate queries carry their unit") {
  const RateQuery bits = rate_query_from_json(json::parse(
      R"({"r_i":0.1,"r_c":0.2,"r_g":0.3,"r_j":1,"r_l":1,"gamma":0.2})"));
  CHECK(bits.unit == Unit::bits);  // default
  const RateQuery nats = rate_query_from_json(json::parse(
      R"({"r_i":0,"r_c":0,"r_g":0,"r_j":1,"r_l":1,"gamma":0,"unit":"nats"})"));
  CHECK(nats.unit == Unit::nats);
  CHECK_THROWS_AS(
      rate_query_from_json(json::parse(
          R"({"r_i":0,"r_c":0,"r_g":0,"r_j":1,"r_l":1,"gamma":0,"unit":"x"})")),
      std::invalid_argument);
  CHECK_THROWS_AS(rate_query_from_json(json::parse(
                      R"({"r_i":-0.1,"r_c":0,"r_g":0,"r_j":1,"r_l":1,"gamma":0})")),
                  std::invalid_argument);
}

TEST_CASE("test channels round-trip through JSON") {
  const TestChannel t = test_channel_from_json(
      json::parse(R"({"table":[[0.7,0.1,0.1,0.1],[0.25,0.25,0.25,0.25]]})"));
  CHECK(t.y_size() == 2);
  CHECK(t.u_size() == 4);
  const json j = test_channel_to_json(t);
  const TestChannel back = test_channel_from_json(j);
  CHECK(back.table().at(0, 0) == t.table().at(0, 0));
  CHECK_THROWS_AS(test_channel_from_json(json::parse(R"({"rows":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      test_channel_from_json(json::parse(R"({"table":[[0.5,0.5],[1.0]]})")),
      std::invalid_argument);
}

TEST_CASE("sim configs validate on load") {
  const SimConfig cfg = sim_config_from_json(json::parse(R"({
    "n": 4, "m_i": 2, "m_gamma": 2, "m_c_rest": 1, "m_g_rest": 2,
    "m_m": 8, "epsilon": 1.5, "seed": 7, "trials": 100
  })"));
  CHECK(cfg.chosen_key_count() == 2);
  CHECK(cfg.codebook_size() == 32);
  CHECK_THROWS_AS(sim_config_from_json(json::parse(R"({
    "n": 4, "m_i": 2, "m_gamma": 0, "m_c_rest": 1, "m_g_rest": 2,
    "m_m": 8, "epsilon": 1.5, "trials": 100
  })")),
                  std::invalid_argument);
  CHECK_THROWS_AS(sim_config_from_json(json::parse(R"({"n": 4})")),
                  std::invalid_argument);
}

TEST_CASE("search outcomes serialize deterministically") {
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.steps = 100;
  cfg.seed = 3;
  SearchOutcome found;
  found.witness = bsc_test_channel(0.25);
  found.restart_index = 2;
  const json j = search_outcome_to_json(found, cfg);
  CHECK(j["found"] == true);
  CHECK(j["restart_index"] == 2);
  CHECK(j["witness"][0][1] == 0.25);

  SearchOutcome missing;
  missing.best_min_slack = -0.125;
  const json m = search_outcome_to_json(missing, cfg);
  CHECK(m["found"] == false);
  CHECK(m["best_min_slack"] == -0.125);
  CHECK(!m.contains("witness"));
}

TEST_CASE("require_discrete lifts binary and rejects gaussian") {
  const DiscreteBIS lifted = require_discrete(BinaryBIS(0.03, 0.1));
  CHECK(lifted.px[0] == 0.5);
  CHECK_THROWS_AS(require_discrete(GaussianBIS(0.5, 0.5)),
                  std::invalid_argument);
}
