// Source/channel triples for the identification system in discrete-matrix,
// binary-symmetric and Gaussian-correlation form, plus the auxiliary test
// channel and rate queries. The joint law always respects the Markov chain
// Z - X - Y - U: the auxiliary variable attaches to Y only.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bis/info_measures.hpp"

namespace bis {

// Row-stochastic transition matrix; each row is a valid ProbVector.
class ChannelMatrix {
 public:
  ChannelMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

// 2x2 symmetric channel with the given crossover probability.
ChannelMatrix bsc_matrix(double crossover);

// Biometric source P_X with enrollment channel P_{Y|X} and identification
// channel P_{Z|X}, all over 0-indexed integer alphabets.
struct DiscreteBIS {
  DiscreteBIS(ProbVector px, ChannelMatrix enrollment,
              ChannelMatrix identification);

  std::size_t x_size() const { return px.size(); }
  std::size_t y_size() const { return enrollment.cols(); }
  std::size_t z_size() const { return identification.cols(); }

  ProbVector px;
  ChannelMatrix enrollment;
  ChannelMatrix identification;
};

// Uniform binary source with symmetric enrollment/identification channels.
struct BinaryBIS {
  BinaryBIS(double p_e, double p_d);
  double p_e;
  double p_d;
};

// Standard Gaussian source with Y = rho1 X + N1, Z = rho2 X + N2 and unit
// stationary variances. Stored by correlations only; variances are derived.
struct GaussianBIS {
  GaussianBIS(double rho1, double rho2);
  double rho1;
  double rho2;
};

// Auxiliary channel P_{U|Y} parameterizing the capacity region,
// |U| <= |Y| + 2.
class TestChannel {
 public:
  explicit TestChannel(ChannelMatrix table);

  std::size_t y_size() const { return table_.rows(); }
  std::size_t u_size() const { return table_.cols(); }
  const ChannelMatrix& table() const { return table_; }

 private:
  ChannelMatrix table_;
};

TestChannel bsc_test_channel(double gamma);
TestChannel constant_test_channel(std::size_t y_size);
TestChannel identity_test_channel(std::size_t y_size);

// Candidate rate tuple plus correlation budget, all in one unit.
struct RateQuery {
  RateQuery(double r_i, double r_c, double r_g, double r_j, double r_l,
            double gamma, Unit unit);
  double r_i, r_c, r_g, r_j, r_l;
  double gamma;
  Unit unit;
};

// The information triple I(Z;U), I(Y;U), I(X;U) that determines all five
// region inequalities. Data processing along U-Y-X-Z forces
// iyu >= ixu >= izu (tolerance 1e-10 on construction).
class RegionBounds {
 public:
  RegionBounds(InfoValue izu, InfoValue iyu, InfoValue ixu);

  const InfoValue& izu() const { return izu_; }
  const InfoValue& iyu() const { return iyu_; }
  const InfoValue& ixu() const { return ixu_; }
  Unit unit() const { return izu_.unit(); }

 private:
  InfoValue izu_, iyu_, ixu_;
};

// Joint law over axes (U, Y, X, Z):
// mass(u,y,x,z) = px(x) P(y|x) P(z|x) P(u|y).
JointTable induced_joint(const DiscreteBIS& bis, const TestChannel& test);

DiscreteBIS binary_to_discrete(const BinaryBIS& b);

// Reverse-direction description X = rho1 Y + N1', Z = rho2 X + N2 of the
// Gaussian model (same joint density as the forward form).
struct ConvertedGaussian {
  double coeff_x_given_y;  // rho1
  double var_x_given_y;    // 1 - rho1^2
  double coeff_z_given_x;  // rho2
  double var_z_given_x;    // 1 - rho2^2

  // Composition of the two linear stages: Z given Y.
  double coeff_z_given_y() const { return coeff_z_given_x * coeff_x_given_y; }
  double var_z_given_y() const {
    return coeff_z_given_x * coeff_z_given_x * var_x_given_y + var_z_given_x;
  }
  // Var(X) recomputed through the converted form; 1 for the stationary
  // standard Gaussian source.
  double var_x() const {
    return coeff_x_given_y * coeff_x_given_y * 1.0 + var_x_given_y;
  }
};

ConvertedGaussian converted_gaussian(const GaussianBIS& g);

}  // namespace bis
