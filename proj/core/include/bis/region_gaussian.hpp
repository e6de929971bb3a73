// Parametric capacity region for the Gaussian model over alpha in (0, 1],
// where alpha is the conditional variance Var(Y|U) of the jointly Gaussian
// auxiliary choice U ~ N(0, 1-alpha), Y = U + Phi. Closed forms only; all
// quantities in nats.
#pragma once

#include <iosfwd>
#include <vector>

#include "bis/models.hpp"
#include "bis/region_binary.hpp"  // RcRule

namespace bis {

// With D(alpha) = alpha rho1^2 rho2^2 + 1 - rho1^2 rho2^2 and
// A(alpha) = alpha rho1^2 + 1 - rho1^2:
//   iyu = ln(1/alpha)/2, ixu = ln(1/A)/2, izu = ln(1/D)/2,
//   rj_offset = ln(D/alpha)/2, rl_offset = ln(D/A)/2.
struct GaussianRegionPoint {
  double alpha;
  double izu, iyu, ixu;
  double rj_offset;
  double rl_offset;
};

GaussianRegionPoint gaussian_point(double alpha, const GaussianBIS& g);

struct GaussianSweepRow {
  double alpha;
  double izu, iyu, ixu;
  double rj_min;
  double rg_max;  // NaN when infeasible under the rule-derived R_C
  bool feasible;
};

// Sweep over a logarithmic alpha grid from alpha_min to 1 inclusive, ordered
// by increasing alpha. alpha = 0 is excluded (iyu diverges); the first row is
// the open-end marker of the region.
std::vector<GaussianSweepRow> gaussian_sweep(const GaussianBIS& g, double gamma,
                                             double r_i, RcRule r_c_rule,
                                             std::size_t grid_points,
                                             double alpha_min = 1e-4,
                                             unsigned threads = 1);

// Slack of the two conditional-EPI inequalities at the jointly Gaussian
// choice, evaluated through the converted system's conditional variances.
// Both are analytically zero:
//   epi_z: e^{2h(Z|U)} - (rho2^2 e^{2h(X|U)} + 2 pi e (1 - rho2^2))
//   epi_y: 2 pi e alpha - e^{2h(Y|U)}
struct EpiSlacks {
  double epi_z;
  double epi_y;
};

EpiSlacks epi_verify(double alpha, const GaussianBIS& g);

// CSV: "# unit: nats", header alpha,izu,iyu,ixu,rj_min,rg_max,feasible.
void write_gaussian_sweep_csv(std::ostream& os,
                              const std::vector<GaussianSweepRow>& rows);

}  // namespace bis
