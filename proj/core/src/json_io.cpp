#include "bis/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace bis {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw std::invalid_argument(std::string("missing numeric field: ") + key);
  }
  return j[key].get<double>();
}

std::size_t require_size(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw std::invalid_argument(std::string("missing unsigned field: ") + key);
  }
  return j[key].get<std::size_t>();
}

std::vector<double> number_list(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(std::string(what) + " must be a nonempty array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw std::invalid_argument(std::string(what) + " must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

ChannelMatrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(std::string(what) + " must be a matrix");
  }
  const std::size_t rows = j.size();
  std::vector<double> data;
  std::size_t cols = 0;
  for (const auto& row : j) {
    std::vector<double> r = number_list(row, what);
    if (cols == 0) {
      cols = r.size();
    } else if (r.size() != cols) {
      throw std::invalid_argument(std::string(what) + " rows differ in length");
    }
    data.insert(data.end(), r.begin(), r.end());
  }
  return ChannelMatrix(rows, cols, std::move(data));
}

Unit unit_from_json(const json& j) {
  const std::string u = j.value("unit", "bits");
  if (u == "bits") return Unit::bits;
  if (u == "nats") return Unit::nats;
  throw std::invalid_argument("unit must be \"bits\" or \"nats\"");
}

}  // namespace

ModelFile model_from_json(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "binary") {
    return BinaryBIS(require_number(j, "p_e"), require_number(j, "p_d"));
  }
  if (kind == "gaussian") {
    return GaussianBIS(require_number(j, "rho1"), require_number(j, "rho2"));
  }
  if (kind == "discrete") {
    if (!j.contains("px")) throw std::invalid_argument("missing px");
    return DiscreteBIS(ProbVector(number_list(j["px"], "px")),
                       matrix_from_json(j.value("enrollment", json()),
                                        "enrollment"),
                       matrix_from_json(j.value("identification", json()),
                                        "identification"));
  }
  throw std::invalid_argument(
      "model kind must be \"discrete\", \"binary\" or \"gaussian\"");
}

RateQuery rate_query_from_json(const json& j) {
  return RateQuery(require_number(j, "r_i"), require_number(j, "r_c"),
                   require_number(j, "r_g"), require_number(j, "r_j"),
                   require_number(j, "r_l"), require_number(j, "gamma"),
                   unit_from_json(j));
}

TestChannel test_channel_from_json(const json& j) {
  if (!j.contains("table")) {
    throw std::invalid_argument("test channel needs a \"table\" matrix");
  }
  return TestChannel(matrix_from_json(j["table"], "test channel table"));
}

SimConfig sim_config_from_json(const json& j) {
  SimConfig cfg;
  cfg.n = require_size(j, "n");
  cfg.m_i = require_size(j, "m_i");
  cfg.m_gamma = require_size(j, "m_gamma");
  cfg.m_c_rest = require_size(j, "m_c_rest");
  cfg.m_g_rest = require_size(j, "m_g_rest");
  cfg.m_m = require_size(j, "m_m");
  cfg.epsilon = require_number(j, "epsilon");
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.trials = require_size(j, "trials");
  validate_config(cfg);
  return cfg;
}

nlohmann::json test_channel_to_json(const TestChannel& test) {
  json rows = json::array();
  for (std::size_t y = 0; y < test.y_size(); ++y) {
    json row = json::array();
    for (std::size_t u = 0; u < test.u_size(); ++u) {
      row.push_back(test.table().at(y, u));
    }
    rows.push_back(std::move(row));
  }
  return json{{"table", std::move(rows)}};
}

nlohmann::json search_outcome_to_json(const SearchOutcome& outcome,
                                      const SearchConfig& cfg) {
  json j{{"found", outcome.witness.has_value()},
         {"restarts", cfg.restarts},
         {"steps", cfg.steps},
         {"seed", cfg.seed}};
  if (outcome.witness) {
    j["witness"] = test_channel_to_json(*outcome.witness)["table"];
    j["restart_index"] = outcome.restart_index;
  } else if (outcome.best_min_slack) {
    j["best_min_slack"] = *outcome.best_min_slack;
  }
  return j;
}

nlohmann::json sim_report_to_json(const SimReport& report,
                                  const SimConfig& cfg) {
  json tallies;
  for (std::size_t e = 0; e < report.event_tallies.size(); ++e) {
    tallies["E" + std::to_string(e + 1)] = report.event_tallies[e];
  }
  auto leak = [](const LeakageValue& v) {
    return json{{"bits", v.bits}, {"exact", v.exact}};
  };
  return json{
      {"unit", "bits"},
      {"n", cfg.n},
      {"trials", report.trials},
      {"error_rate", report.error_rate},
      {"event_tallies", std::move(tallies)},
      {"key_correlation", leak(report.key_correlation)},
      {"secrecy_leakage", leak(report.secrecy_leakage)},
      {"privacy_leakage", leak(report.privacy_leakage)},
  };
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

DiscreteBIS require_discrete(const ModelFile& model) {
  if (const auto* d = std::get_if<DiscreteBIS>(&model)) return *d;
  if (const auto* b = std::get_if<BinaryBIS>(&model)) {
    return binary_to_discrete(*b);
  }
  throw std::invalid_argument(
      "this command needs a discrete or binary model, not a gaussian one");
}

}  // namespace bis
