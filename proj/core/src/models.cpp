#include "bis/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bis {

namespace {

void check_crossover(double p, const char* what) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument(std::string(what) +
                                " must lie in [0, 0.5], got " +
                                std::to_string(p));
  }
}

}  // namespace

ChannelMatrix::ChannelMatrix(std::size_t rows, std::size_t cols,
                             std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("channel matrix must be nonempty");
  }
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("channel matrix data size mismatch");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    // Row validity delegated to ProbVector (nonnegative, mass 1).
    ProbVector(std::vector<double>(row(r).begin(), row(r).end()));
  }
}

ChannelMatrix bsc_matrix(double crossover) {
  if (!(crossover >= 0.0 && crossover <= 1.0)) {
    throw std::invalid_argument("crossover out of [0, 1]");
  }
  return ChannelMatrix(2, 2,
                       {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

DiscreteBIS::DiscreteBIS(ProbVector px_in, ChannelMatrix enrollment_in,
                         ChannelMatrix identification_in)
    : px(std::move(px_in)),
      enrollment(std::move(enrollment_in)),
      identification(std::move(identification_in)) {
  if (enrollment.rows() != px.size() || identification.rows() != px.size()) {
    throw std::invalid_argument(
        "channel row count must match source alphabet size");
  }
}

BinaryBIS::BinaryBIS(double p_e_in, double p_d_in) : p_e(p_e_in), p_d(p_d_in) {
  check_crossover(p_e, "enrollment crossover");
  check_crossover(p_d, "identification crossover");
}

GaussianBIS::GaussianBIS(double rho1_in, double rho2_in)
    : rho1(rho1_in), rho2(rho2_in) {
  if (!(std::abs(rho1) < 1.0 && std::abs(rho2) < 1.0)) {
    throw std::invalid_argument("correlations must lie in (-1, 1)");
  }
}

TestChannel::TestChannel(ChannelMatrix table) : table_(std::move(table)) {
  if (table_.cols() > table_.rows() + 2) {
    throw std::invalid_argument("auxiliary alphabet exceeds |Y| + 2");
  }
}

TestChannel bsc_test_channel(double gamma) {
  return TestChannel(bsc_matrix(gamma));
}

TestChannel constant_test_channel(std::size_t y_size) {
  return TestChannel(ChannelMatrix(y_size, 1, std::vector<double>(y_size, 1.0)));
}

TestChannel identity_test_channel(std::size_t y_size) {
  std::vector<double> data(y_size * y_size, 0.0);
  for (std::size_t y = 0; y < y_size; ++y) data[y * y_size + y] = 1.0;
  return TestChannel(ChannelMatrix(y_size, y_size, std::move(data)));
}

RateQuery::RateQuery(double r_i_in, double r_c_in, double r_g_in, double r_j_in,
                     double r_l_in, double gamma_in, Unit unit_in)
    : r_i(r_i_in),
      r_c(r_c_in),
      r_g(r_g_in),
      r_j(r_j_in),
      r_l(r_l_in),
      gamma(gamma_in),
      unit(unit_in) {
  for (double v : {r_i, r_c, r_g, r_j, r_l, gamma}) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("rates and gamma must be nonnegative");
    }
  }
}

RegionBounds::RegionBounds(InfoValue izu, InfoValue iyu, InfoValue ixu)
    : izu_(izu), iyu_(iyu), ixu_(ixu) {
  if (izu_.unit() != iyu_.unit() || izu_.unit() != ixu_.unit()) {
    throw std::invalid_argument("region bounds must share one unit");
  }
  constexpr double tol = 1e-10;
  if (iyu_.amount() < ixu_.amount() - tol ||
      ixu_.amount() < izu_.amount() - tol) {
    throw std::invalid_argument(
        "data-processing ordering I(Y;U) >= I(X;U) >= I(Z;U) violated");
  }
}

JointTable induced_joint(const DiscreteBIS& bis, const TestChannel& test) {
  if (test.y_size() != bis.y_size()) {
    throw std::invalid_argument(
        "test channel row count must match enrollment output alphabet");
  }
  const std::size_t nu = test.u_size();
  const std::size_t ny = bis.y_size();
  const std::size_t nx = bis.x_size();
  const std::size_t nz = bis.z_size();
  std::vector<double> mass(nu * ny * nx * nz, 0.0);
  std::size_t flat = 0;
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < nx; ++x) {
        const double base =
            bis.px[x] * bis.enrollment.at(x, y) * test.table().at(y, u);
        for (std::size_t z = 0; z < nz; ++z, ++flat) {
          mass[flat] = base * bis.identification.at(x, z);
        }
      }
    }
  }
  return JointTable({{"U", nu}, {"Y", ny}, {"X", nx}, {"Z", nz}},
                    std::move(mass));
}

DiscreteBIS binary_to_discrete(const BinaryBIS& b) {
  return DiscreteBIS(ProbVector::uniform(2), bsc_matrix(b.p_e),
                     bsc_matrix(b.p_d));
}

ConvertedGaussian converted_gaussian(const GaussianBIS& g) {
  return ConvertedGaussian{g.rho1, 1.0 - g.rho1 * g.rho1, g.rho2,
                           1.0 - g.rho2 * g.rho2};
}

}  // namespace bis
