// Exact information-theoretic primitives on finite distributions: Shannon
// entropy, mutual information, binary entropy and its inverse, and the
// binary-convolution star operator. All quantities carry an explicit unit
// (bits or nats) so the binary and Gaussian code paths can never mix bases
// silently.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bis {

enum class Unit { bits, nats };

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

// Mass below this threshold is treated as an exact zero inside log
// computations (continuity convention 0 log 0 = 0).
inline constexpr double kZeroMass = 1e-15;

std::string_view unit_name(Unit u);

// Nonnegative entropy/MI amount tagged with its unit. Construction clamps
// values in [-1e-12, 0) to zero; anything more negative is rejected.
class InfoValue {
 public:
  InfoValue(double amount, Unit unit);

  double amount() const { return amount_; }
  Unit unit() const { return unit_; }

  double in(Unit target) const;
  double in_bits() const { return in(Unit::bits); }
  double in_nats() const { return in(Unit::nats); }

 private:
  double amount_;
  Unit unit_;
};

// Probability vector over a finite alphabet: entries >= 0, total mass 1
// within 1e-12.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> values);

  static ProbVector uniform(std::size_t n);
  static ProbVector point_mass(std::size_t index, std::size_t n);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const& { return values_; }
  std::span<const double> values() const&& = delete;  // would dangle

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<double> values_;
};

struct Axis {
  std::string name;
  std::size_t size;
};

// Joint probability table over named finite alphabets. Mass is stored
// row-major with the last axis fastest. Total mass 1 within 1e-12, all
// entries nonnegative.
class JointTable {
 public:
  JointTable(std::vector<Axis> axes, std::vector<double> mass);

  const std::vector<Axis>& axes() const { return axes_; }
  std::span<const double> mass() const& { return mass_; }
  std::span<const double> mass() const&& = delete;  // would dangle
  std::size_t cell_count() const { return mass_.size(); }

  std::size_t axis_index(std::string_view name) const;  // throws if unknown
  std::size_t axis_size(std::string_view name) const;

  double at(std::span<const std::size_t> index) const;

  // Marginal over the named axes, in the order given; all others summed out.
  JointTable marginal(std::span<const std::string> keep) const;
  ProbVector axis_marginal(std::string_view name) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> mass_;
  std::vector<std::size_t> strides_;
};

// H_b(p) = -p log p - (1-p) log(1-p) in the requested unit.
InfoValue binary_entropy(double p, Unit unit = Unit::bits);

// Inverse of H_b restricted to [0, 0.5], input in bits. Monotone bisection
// to absolute tolerance 1e-12 on p.
double inv_binary_entropy(double h_bits);

// Binary convolution a*b = a(1-b) + (1-a)b, the crossover probability of
// two cascaded binary symmetric channels.
double star(double a, double b);

InfoValue entropy(const ProbVector& dist, Unit unit);
InfoValue entropy(const JointTable& joint, Unit unit);

// I(A;B) = H(A) + H(B) - H(A,B) after marginalizing out all other axes.
InfoValue mutual_information(const JointTable& joint, std::string_view axis_a,
                             std::string_view axis_b, Unit unit);

// H(target | given...) = H(target, given...) - H(given...).
InfoValue conditional_entropy(const JointTable& joint, std::string_view target,
                              std::span<const std::string> given, Unit unit);

}  // namespace bis
