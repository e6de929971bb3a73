#include "bis/region_discrete.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bis/parallel.hpp"
#include "bis/rng.hpp"

namespace bis {

double RateCheck::min_slack() const {
  return std::min({sum_ic, sum_ig, sum_icg, storage, privacy});
}

RegionBounds region_bounds(const DiscreteBIS& bis, const TestChannel& test,
                             Unit unit) {
  JointTable joint = induced_joint(bis, test);
  return RegionBounds(mutual_information(joint, "Z", "U", unit),
                      mutual_information(joint, "Y", "U", unit),
                      mutual_information(joint, "X", "U", unit));
}

RateCheck check_rates(const RateQuery& q, const RegionBounds& b) {
  if (q.unit != b.unit()) {
    throw std::invalid_argument("rate query and bounds use different units");
  }
  const double izu = b.izu().amount();
  const double iyu = b.iyu().amount();
  const double ixu = b.ixu().amount();
  return RateCheck{
      izu - (q.r_i + q.r_c),
      izu - (q.r_i + q.r_g),
      izu + std::min({q.gamma, q.r_c, q.r_g}) - (q.r_i + q.r_c + q.r_g),
      q.r_j - (iyu - izu + q.r_i + q.r_c),
      q.r_l - (ixu - izu + q.r_i),
  };
}

double max_rg_value(double izu, double r_i, double r_c, double gamma) {
  return std::min(izu - r_i, izu - r_i - r_c + std::min(gamma, r_c));
}

std::optional<double> max_rg(const RegionBounds& b, double r_i, double r_c,
                             double gamma) {
  if (!(r_i >= 0.0 && r_c >= 0.0 && gamma >= 0.0)) {
    throw std::invalid_argument("rates and gamma must be nonnegative");
  }
  const double izu = b.izu().amount();
  if (r_i + r_c > izu + kFeasibilityTol) return std::nullopt;
  return std::max(0.0, max_rg_value(izu, r_i, r_c, gamma));
}

bool reduced_region(const RateQuery& q, const RegionBounds& b,
                      ReducedVariant variant) {
  if (q.unit != b.unit()) {
    throw std::invalid_argument("rate query and bounds use different units");
  }
  if (q.gamma != 0.0) {
    throw std::invalid_argument("reduced regions require gamma = 0");
  }
  const double izu = b.izu().amount();
  const double iyu = b.iyu().amount();
  const double ixu = b.ixu().amount();
  if (variant == ReducedVariant::chosen_key_only) {
    if (q.r_g != 0.0) {
      throw std::invalid_argument("chosen_key_only variant requires r_g = 0");
    }
    return izu - (q.r_i + q.r_c) >= -kFeasibilityTol &&
           q.r_j - (iyu - izu + q.r_i + q.r_c) >= -kFeasibilityTol &&
           q.r_l - (ixu - izu + q.r_i) >= -kFeasibilityTol;
  }
  if (q.r_i != 0.0) {
    throw std::invalid_argument("single_user variant requires r_i = 0");
  }
  return izu - (q.r_c + q.r_g) >= -kFeasibilityTol &&
         q.r_j - (iyu - izu + q.r_c) >= -kFeasibilityTol &&
         q.r_l - (ixu - izu) >= -kFeasibilityTol;
}

namespace {

// Hill-climbing state: a row-stochastic |Y| x (|Y|+2) matrix stored flat.
struct Candidate {
  std::vector<double> rows;
  std::size_t y_size, u_size;

  TestChannel to_channel() const {
    return TestChannel(ChannelMatrix(y_size, u_size, rows));
  }
};

double objective(const DiscreteBIS& bis, const RateQuery& q,
                 const Candidate& c) {
  return check_rates(q, region_bounds(bis, c.to_channel(), q.unit))
      .min_slack();
}

Candidate random_candidate(std::size_t y_size, std::size_t u_size,
                           std::mt19937_64& gen) {
  Candidate c{std::vector<double>(), y_size, u_size};
  c.rows.reserve(y_size * u_size);
  for (std::size_t y = 0; y < y_size; ++y) {
    auto row = rng::dirichlet_uniform(u_size, gen);
    c.rows.insert(c.rows.end(), row.begin(), row.end());
  }
  return c;
}

}  // namespace

SearchOutcome search_test_channel(const DiscreteBIS& bis, const RateQuery& q,
                                  const SearchConfig& cfg) {
  if (cfg.restarts == 0) throw std::invalid_argument("restarts must be >= 1");
  const std::size_t y_size = bis.y_size();
  const std::size_t u_size = y_size + 2;

  std::vector<std::optional<Candidate>> found(cfg.restarts);
  std::vector<double> best_slack(cfg.restarts,
                                 -std::numeric_limits<double>::infinity());
  // Smallest restart index with a witness so far; restarts above it may stop
  // early without affecting the (deterministic) min-index result.
  std::atomic<std::size_t> min_found{SIZE_MAX};

  parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
    if (r > min_found.load(std::memory_order_relaxed)) return;
    std::mt19937_64 gen = rng::substream(cfg.seed, r);
    Candidate cur = random_candidate(y_size, u_size, gen);
    double cur_obj = objective(bis, q, cur);
    best_slack[r] = cur_obj;
    const double decay =
        cfg.steps > 1
            ? std::pow(cfg.step_final / cfg.step_init,
                       1.0 / static_cast<double>(cfg.steps - 1))
            : 1.0;
    double step = cfg.step_init;
    for (std::size_t s = 0;
         s < cfg.steps && cur_obj < -kFeasibilityTol; ++s, step *= decay) {
      if (r > min_found.load(std::memory_order_relaxed)) return;
      std::size_t y = rng::uniform_index(y_size, gen);
      auto dir = rng::dirichlet_uniform(u_size, gen);
      Candidate next = cur;
      for (std::size_t u = 0; u < u_size; ++u) {
        next.rows[y * u_size + u] =
            (1.0 - step) * cur.rows[y * u_size + u] + step * dir[u];
      }
      double next_obj = objective(bis, q, next);
      if (next_obj > cur_obj) {
        cur = std::move(next);
        cur_obj = next_obj;
        best_slack[r] = cur_obj;
      }
    }
    if (cur_obj >= -kFeasibilityTol) {
      found[r] = std::move(cur);
      std::size_t prev = min_found.load(std::memory_order_relaxed);
      while (r < prev &&
             !min_found.compare_exchange_weak(prev, r,
                                              std::memory_order_relaxed)) {
      }
    }
  });

  SearchOutcome out;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    if (found[r]) {
      out.witness = found[r]->to_channel();
      out.restart_index = r;
      return out;
    }
  }
  out.best_min_slack = *std::max_element(best_slack.begin(), best_slack.end());
  return out;
}

}  // namespace bis
