#include "bis/region_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bis/parallel.hpp"
#include "bis/region_discrete.hpp"

namespace bis {

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
}

std::string sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

GaussianRegionPoint gaussian_point(double alpha, const GaussianBIS& g) {
  check_alpha(alpha);
  const double r1sq = g.rho1 * g.rho1;
  const double r12sq = r1sq * g.rho2 * g.rho2;
  const double a = alpha * r1sq + 1.0 - r1sq;        // Var(X|U)
  const double d = alpha * r12sq + 1.0 - r12sq;      // Var(Z|U)
  return GaussianRegionPoint{
      alpha,
      0.5 * std::log(1.0 / d),
      0.5 * std::log(1.0 / alpha),
      0.5 * std::log(1.0 / a),
      0.5 * std::log(d / alpha),
      0.5 * std::log(d / a),
  };
}

std::vector<GaussianSweepRow> gaussian_sweep(const GaussianBIS& g, double gamma,
                                             double r_i, RcRule r_c_rule,
                                             std::size_t grid_points,
                                             double alpha_min,
                                             unsigned threads) {
  if (grid_points < 2) throw std::invalid_argument("grid needs >= 2 points");
  if (!(gamma >= 0.0) || !(r_i >= 0.0)) {
    throw std::invalid_argument("gamma and r_i must be nonnegative");
  }
  if (!(alpha_min > 0.0 && alpha_min < 1.0)) {
    throw std::invalid_argument("alpha_min must lie in (0, 1)");
  }
  const double log_min = std::log(alpha_min);
  std::vector<GaussianSweepRow> rows(grid_points);
  parallel_for(grid_points, threads, [&](std::size_t k) {
    const double t =
        static_cast<double>(k) / static_cast<double>(grid_points - 1);
    const double alpha = k + 1 == grid_points
                             ? 1.0
                             : std::exp(log_min * (1.0 - t));
    const GaussianRegionPoint pt = gaussian_point(alpha, g);
    const double r_c = r_c_rule == RcRule::full_izu ? pt.izu : 0.5 * pt.izu;
    const bool feasible = r_i + r_c <= pt.izu + kFeasibilityTol;
    rows[k] = GaussianSweepRow{
        alpha,
        pt.izu,
        pt.iyu,
        pt.ixu,
        pt.rj_offset + r_i + r_c,
        feasible ? std::max(0.0, max_rg_value(pt.izu, r_i, r_c, gamma))
                 : std::numeric_limits<double>::quiet_NaN(),
        feasible,
    };
  });
  return rows;
}

EpiSlacks epi_verify(double alpha, const GaussianBIS& g) {
  check_alpha(alpha);
  const double r1sq = g.rho1 * g.rho1;
  const double r2sq = g.rho2 * g.rho2;
  // Conditional variances of the jointly Gaussian choice, via the converted
  // system: Var(A|U) = 1 - c^2 (1 - alpha) for coefficient c from U to A.
  const double var_y_u = alpha;
  const double var_x_u = 1.0 - r1sq * (1.0 - alpha);
  const double var_z_u = 1.0 - r1sq * r2sq * (1.0 - alpha);
  const double h_x_u = 0.5 * std::log(kTwoPiE * var_x_u);
  const double h_y_u = 0.5 * std::log(kTwoPiE * var_y_u);
  const double h_z_u = 0.5 * std::log(kTwoPiE * var_z_u);
  return EpiSlacks{
      std::exp(2.0 * h_z_u) -
          (r2sq * std::exp(2.0 * h_x_u) + kTwoPiE * (1.0 - r2sq)),
      kTwoPiE * alpha - std::exp(2.0 * h_y_u),
  };
}

void write_gaussian_sweep_csv(std::ostream& os,
                              const std::vector<GaussianSweepRow>& rows) {
  os << "# unit: nats\n";
  os << "alpha,izu,iyu,ixu,rj_min,rg_max,feasible\n";
  for (const GaussianSweepRow& r : rows) {
    os << sig12(r.alpha) << ',' << sig12(r.izu) << ',' << sig12(r.iyu) << ','
       << sig12(r.ixu) << ',' << sig12(r.rj_min) << ',' << sig12(r.rg_max)
       << ',' << (r.feasible ? 1 : 0) << '\n';
  }
}

}  // namespace bis
