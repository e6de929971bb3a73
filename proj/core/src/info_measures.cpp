#include "bis/info_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bis {

namespace {

double log_in_unit(double x, Unit unit) {
  return unit == Unit::bits ? std::log2(x) : std::log(x);
}

// -sum p log p over raw mass, treating entries below kZeroMass as zero.
double entropy_of_mass(std::span<const double> mass, Unit unit) {
  double h = 0.0;
  for (double p : mass) {
    if (p < kZeroMass) continue;
    h -= p * log_in_unit(p, unit);
  }
  return h;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

}  // namespace

std::string_view unit_name(Unit u) {
  return u == Unit::bits ? "bits" : "nats";
}

InfoValue::InfoValue(double amount, Unit unit) : amount_(amount), unit_(unit) {
  if (amount_ < -1e-12) {
    throw std::invalid_argument("information value below -1e-12: " +
                                std::to_string(amount_));
  }
  if (amount_ < 0.0) amount_ = 0.0;
}

double InfoValue::in(Unit target) const {
  if (target == unit_) return amount_;
  return unit_ == Unit::bits ? amount_ * kLn2 : amount_ / kLn2;
}

ProbVector::ProbVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("probability vector must be nonempty");
  }
  double sum = 0.0;
  for (double v : values_) {
    if (v < 0.0) {
      throw std::invalid_argument("negative probability entry: " +
                                  std::to_string(v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("probability mass sums to " +
                                std::to_string(sum) + ", expected 1");
  }
}

ProbVector ProbVector::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("empty alphabet");
  return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbVector ProbVector::point_mass(std::size_t index, std::size_t n) {
  if (index >= n) throw std::invalid_argument("point mass index out of range");
  std::vector<double> v(n, 0.0);
  v[index] = 1.0;
  return ProbVector(std::move(v));
}

JointTable::JointTable(std::vector<Axis> axes, std::vector<double> mass)
    : axes_(std::move(axes)), mass_(std::move(mass)) {
  if (axes_.empty()) throw std::invalid_argument("joint table needs axes");
  std::size_t cells = 1;
  for (const Axis& a : axes_) {
    if (a.size == 0) throw std::invalid_argument("axis with empty alphabet");
    cells *= a.size;
  }
  if (mass_.size() != cells) {
    throw std::invalid_argument("mass size does not match axis product");
  }
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    for (std::size_t j = i + 1; j < axes_.size(); ++j) {
      if (axes_[i].name == axes_[j].name) {
        throw std::invalid_argument("duplicate axis name: " + axes_[i].name);
      }
    }
  }
  double sum = 0.0;
  for (double v : mass_) {
    if (v < 0.0) {
      throw std::invalid_argument("negative joint mass entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("joint mass sums to " + std::to_string(sum));
  }
  strides_.assign(axes_.size(), 1);
  for (std::size_t i = axes_.size(); i-- > 1;) {
    strides_[i - 1] = strides_[i] * axes_[i].size;
  }
}

std::size_t JointTable::axis_index(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == name) return i;
  }
  throw std::out_of_range("unknown axis: " + std::string(name));
}

std::size_t JointTable::axis_size(std::string_view name) const {
  return axes_[axis_index(name)].size;
}

double JointTable::at(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) {
    throw std::invalid_argument("index rank mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= axes_[i].size) throw std::out_of_range("index out of range");
    flat += index[i] * strides_[i];
  }
  return mass_[flat];
}

JointTable JointTable::marginal(std::span<const std::string> keep) const {
  if (keep.empty()) throw std::invalid_argument("marginal needs axes to keep");
  std::vector<std::size_t> kept_pos;
  std::vector<Axis> kept_axes;
  kept_pos.reserve(keep.size());
  for (const std::string& name : keep) {
    std::size_t p = axis_index(name);
    kept_pos.push_back(p);
    kept_axes.push_back(axes_[p]);
  }
  std::vector<std::size_t> out_strides(kept_axes.size(), 1);
  for (std::size_t i = kept_axes.size(); i-- > 1;) {
    out_strides[i - 1] = out_strides[i] * kept_axes[i].size;
  }
  std::size_t out_cells = 1;
  for (const Axis& a : kept_axes) out_cells *= a.size;
  std::vector<double> out(out_cells, 0.0);

  std::vector<std::size_t> idx(axes_.size(), 0);
  for (std::size_t flat = 0; flat < mass_.size(); ++flat) {
    std::size_t out_flat = 0;
    for (std::size_t k = 0; k < kept_pos.size(); ++k) {
      out_flat += idx[kept_pos[k]] * out_strides[k];
    }
    out[out_flat] += mass_[flat];
    for (std::size_t a = axes_.size(); a-- > 0;) {
      if (++idx[a] < axes_[a].size) break;
      idx[a] = 0;
    }
  }
  return JointTable(std::move(kept_axes), std::move(out));
}

ProbVector JointTable::axis_marginal(std::string_view name) const {
  std::vector<std::string> keep{std::string(name)};
  JointTable m = marginal(keep);
  return ProbVector(std::vector<double>(m.mass().begin(), m.mass().end()));
}

InfoValue binary_entropy(double p, Unit unit) {
  check_probability(p, "binary entropy argument");
  double h = 0.0;
  if (p >= kZeroMass) h -= p * log_in_unit(p, unit);
  if (1.0 - p >= kZeroMass) h -= (1.0 - p) * log_in_unit(1.0 - p, unit);
  return InfoValue(h, unit);
}

double inv_binary_entropy(double h_bits) {
  if (!(h_bits >= 0.0 && h_bits <= 1.0)) {
    throw std::invalid_argument("binary entropy inverse needs h in [0, 1], got " +
                                std::to_string(h_bits));
  }
  if (h_bits == 0.0) return 0.0;
  if (h_bits == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid, Unit::bits).amount() < h_bits) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double star(double a, double b) {
  check_probability(a, "star operand");
  check_probability(b, "star operand");
  return a * (1.0 - b) + (1.0 - a) * b;
}

InfoValue entropy(const ProbVector& dist, Unit unit) {
  return InfoValue(entropy_of_mass(dist.values(), unit), unit);
}

InfoValue entropy(const JointTable& joint, Unit unit) {
  return InfoValue(entropy_of_mass(joint.mass(), unit), unit);
}

InfoValue mutual_information(const JointTable& joint, std::string_view axis_a,
                             std::string_view axis_b, Unit unit) {
  if (axis_a == axis_b) throw std::invalid_argument("mutual information needs two distinct axes");
  std::vector<std::string> pair{std::string(axis_a), std::string(axis_b)};
  JointTable ab = joint.marginal(pair);
  double ha = entropy(ab.axis_marginal(axis_a), unit).amount();
  double hb = entropy(ab.axis_marginal(axis_b), unit).amount();
  double hab = entropy(ab, unit).amount();
  return InfoValue(ha + hb - hab, unit);
}

InfoValue conditional_entropy(const JointTable& joint, std::string_view target,
                              std::span<const std::string> given, Unit unit) {
  std::vector<std::string> all{std::string(target)};
  all.insert(all.end(), given.begin(), given.end());
  double h_joint = entropy(joint.marginal(all), unit).amount();
  if (given.empty()) return InfoValue(h_joint, unit);
  double h_given = entropy(joint.marginal(given), unit).amount();
  return InfoValue(h_joint - h_given, unit);
}

}  // namespace bis
