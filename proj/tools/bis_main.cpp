// Command-line front end: region boundary sweeps (CSV), membership search
// for a witness test channel (JSON), and finite-blocklength simulation of
// the coding scheme (JSON report). Exit codes: 0 success, 2 usage or
// validation error, 3 enumeration-guard refusal.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bis/json_io.hpp"
#include "bis/parallel.hpp"
#include "bis/region_binary.hpp"
#include "bis/region_discrete.hpp"
#include "bis/region_gaussian.hpp"
#include "bis/rng.hpp"
#include "bis/simulator.hpp"

namespace {

// Stream to --out when given, stdout otherwise.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw std::invalid_argument("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

bis::RcRule parse_rule(const std::string& rule) {
  if (rule == "full") return bis::RcRule::full_izu;
  if (rule == "half") return bis::RcRule::half_izu;
  throw std::invalid_argument("--rc-rule must be \"full\" or \"half\"");
}

struct RegionFlags {
  double gamma = 0.0;
  double r_i = 0.0;
  std::string rc_rule = "full";
  std::size_t grid = 0;
  std::string out;
};

int run_binary_region(double pe, double pd, const RegionFlags& f,
                      unsigned threads) {
  const auto rows = bis::boundary_sweep(pe, pd, f.gamma, f.r_i,
                                    parse_rule(f.rc_rule), f.grid, threads);
  OutputTarget target(f.out);
  bis::write_binary_sweep_csv(target.stream(), rows);
  return 0;
}

int run_gaussian_region(double rho1, double rho2, const RegionFlags& f,
                        unsigned threads) {
  const bis::GaussianBIS model(rho1, rho2);
  const auto rows = bis::gaussian_sweep(model, f.gamma, f.r_i,
                                        parse_rule(f.rc_rule), f.grid, 1e-4,
                                        threads);
  OutputTarget target(f.out);
  bis::write_gaussian_sweep_csv(target.stream(), rows);
  return 0;
}

int run_membership(const std::string& model_path,
                   const std::string& rates_path, bis::SearchConfig cfg,
                   const std::string& out) {
  const bis::DiscreteBIS model = bis::require_discrete(
      bis::model_from_json(bis::load_json_file(model_path)));
  const bis::RateQuery query =
      bis::rate_query_from_json(bis::load_json_file(rates_path));
  const bis::SearchOutcome outcome =
      bis::search_test_channel(model, query, cfg);
  OutputTarget target(out);
  target.stream() << bis::search_outcome_to_json(outcome, cfg).dump(2) << '\n';
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& model_path,
                 const std::string& test_path, bool exact,
                 const std::string& transcript_path, const std::string& out,
                 unsigned threads) {
  const bis::SimConfig cfg =
      bis::sim_config_from_json(bis::load_json_file(config_path));
  const bis::DiscreteBIS model = bis::require_discrete(
      bis::model_from_json(bis::load_json_file(model_path)));
  const bis::TestChannel test =
      bis::test_channel_from_json(bis::load_json_file(test_path));

  // The enumeration guard is checked before any Monte Carlo work so that
  // oversized --exact configs are refused up front.
  std::optional<bis::ExactLeakage> leak;
  if (exact) {
    const bis::JointTable joint = bis::induced_joint(model, test);
    auto gen = bis::rng::substream(cfg.seed, 0);
    const bis::Codebook cb =
        bis::generate_codebook(cfg, joint.axis_marginal("U"), gen);
    leak = bis::exact_leakage(cfg, model, test, cb);
  }

  std::vector<bis::TrialRecord> transcript;
  std::vector<bis::TrialRecord>* transcript_ptr =
      transcript_path.empty() ? nullptr : &transcript;
  bis::SimReport report =
      bis::run_monte_carlo(cfg, model, test, threads, transcript_ptr);

  if (leak) {
    report.key_correlation = {leak->key_correlation_bits, true};
    report.secrecy_leakage = {leak->secrecy_leakage_bits, true};
    report.privacy_leakage = {leak->privacy_leakage_bits, true};
  }

  nlohmann::json j = bis::sim_report_to_json(report, cfg);
  if (exact) j["exact_mode"] = true;

  if (!transcript_path.empty()) {
    std::ofstream tf(transcript_path);
    if (!tf) {
      throw std::invalid_argument("cannot open transcript file: " +
                                  transcript_path);
    }
    bis::write_transcript_csv(tf, transcript);
  }
  OutputTarget target(out);
  target.stream() << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Capacity region and coding-scheme simulator for biometric "
      "identification systems with chosen and generated secret keys"};
  app.require_subcommand(1);
  unsigned threads = bis::default_thread_count();
  app.add_option("--threads", threads, "worker pool size")
      ->capture_default_str();

  double pe = 0.0, pd = 0.0, rho1 = 0.0, rho2 = 0.0;
  RegionFlags binary_flags, gaussian_flags;
  binary_flags.grid = 513;
  gaussian_flags.grid = 256;

  auto* binary = app.add_subcommand(
      "binary-region", "boundary sweep of the binary-symmetric region (CSV)");
  binary->add_option("--pe", pe, "enrollment crossover probability")
      ->required();
  binary->add_option("--pd", pd, "identification crossover probability")
      ->required();
  binary->add_option("--gamma", binary_flags.gamma, "correlation budget");
  binary->add_option("--ri", binary_flags.r_i, "identification rate");
  binary->add_option("--rc-rule", binary_flags.rc_rule,
                     "chosen-key rate rule: full or half I(Z;U)")
      ->check(CLI::IsMember({"full", "half"}));
  binary->add_option("--grid", binary_flags.grid, "gamma grid points")
      ->capture_default_str();
  binary->add_option("--out", binary_flags.out, "output file (default stdout)");

  auto* gaussian = app.add_subcommand(
      "gaussian-region", "boundary sweep of the Gaussian region (CSV)");
  gaussian->add_option("--rho1", rho1, "enrollment correlation")->required();
  gaussian->add_option("--rho2", rho2, "identification correlation")
      ->required();
  gaussian->add_option("--gamma", gaussian_flags.gamma, "correlation budget");
  gaussian->add_option("--ri", gaussian_flags.r_i, "identification rate");
  gaussian->add_option("--rc-rule", gaussian_flags.rc_rule,
                       "chosen-key rate rule: full or half I(Z;U)")
      ->check(CLI::IsMember({"full", "half"}));
  gaussian->add_option("--grid", gaussian_flags.grid, "alpha grid points")
      ->capture_default_str();
  gaussian->add_option("--out", gaussian_flags.out,
                       "output file (default stdout)");

  std::string model_path, rates_path;
  bis::SearchConfig search_cfg;
  std::string membership_out;
  auto* membership = app.add_subcommand(
      "membership", "search for a witness test channel (JSON verdict)");
  membership->add_option("--model", model_path, "model JSON file")->required();
  membership->add_option("--rates", rates_path, "rate-query JSON file")
      ->required();
  membership->add_option("--restarts", search_cfg.restarts, "search restarts")
      ->capture_default_str();
  membership->add_option("--steps", search_cfg.steps, "steps per restart")
      ->capture_default_str();
  membership->add_option("--seed", search_cfg.seed, "random seed")
      ->capture_default_str();
  membership->add_option("--out", membership_out,
                         "output file (default stdout)");

  std::string sim_config_path, sim_model_path, sim_test_path, transcript_path,
      sim_out;
  bool exact = false;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo simulation of the coding scheme (JSON report)");
  simulate->add_option("--config", sim_config_path, "sim config JSON file")
      ->required();
  simulate->add_option("--model", sim_model_path, "model JSON file")
      ->required();
  simulate->add_option("--test", sim_test_path, "test channel JSON file")
      ->required();
  simulate->add_flag("--exact", exact,
                     "replace leakage estimates with exact enumeration");
  simulate->add_option("--transcript", transcript_path,
                       "per-trial transcript CSV path");
  simulate->add_option("--out", sim_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (binary->parsed()) {
      return run_binary_region(pe, pd, binary_flags, threads);
    }
    if (gaussian->parsed()) {
      return run_gaussian_region(rho1, rho2, gaussian_flags, threads);
    }
    if (membership->parsed()) {
      search_cfg.threads = threads;
      return run_membership(model_path, rates_path, search_cfg,
                            membership_out);
    }
    if (simulate->parsed()) {
      return run_simulate(sim_config_path, sim_model_path, sim_test_path,
                          exact, transcript_path, sim_out, threads);
    }
  } catch (const bis::EnumerationGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
