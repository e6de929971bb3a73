// JSON schemas for the file formats the CLI consumes and produces.
//
// Model file:    {"kind": "binary", "p_e": .., "p_d": ..}
//                {"kind": "gaussian", "rho1": .., "rho2": ..}
//                {"kind": "discrete", "px": [..], "enrollment": [[..],..],
//                 "identification": [[..],..]}
// Rates file:    {"r_i","r_c","r_g","r_j","r_l","gamma","unit"}
// Test channel:  {"table": [[..],..]} (row-major, rows indexed by Y)
// Sim config:    {"n","m_i","m_gamma","m_c_rest","m_g_rest","m_m",
//                 "epsilon","seed","trials"}
#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "bis/models.hpp"
#include "bis/region_discrete.hpp"
#include "bis/simulator.hpp"

namespace bis {

using ModelFile = std::variant<BinaryBIS, GaussianBIS, DiscreteBIS>;

ModelFile model_from_json(const nlohmann::json& j);
RateQuery rate_query_from_json(const nlohmann::json& j);
TestChannel test_channel_from_json(const nlohmann::json& j);
SimConfig sim_config_from_json(const nlohmann::json& j);

nlohmann::json test_channel_to_json(const TestChannel& test);
nlohmann::json search_outcome_to_json(const SearchOutcome& outcome,
                                      const SearchConfig& cfg);
nlohmann::json sim_report_to_json(const SimReport& report,
                                  const SimConfig& cfg);

nlohmann::json load_json_file(const std::string& path);

// Lifts binary models, passes discrete through, rejects Gaussian (no finite
// joint law to search or simulate).
DiscreteBIS require_discrete(const ModelFile& model);

}  // namespace bis
