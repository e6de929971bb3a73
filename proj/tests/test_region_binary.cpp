#include "bis/region_binary.hpp"

#include <cmath>
#include <sstream>

#include <doctest.h>

#include "bis/region_discrete.hpp"
#include "test_util.hpp"

using namespace bis;

namespace {

// Frozen: 1 - hb_oracle(0.124).
constexpr double kIzuAtZero = 0.4592495220365134;

}  // namespace

TEST_CASE("binary_point closed forms") {
  const BinaryRegionPoint absorbing = binary_point(0.5, 0.03, 0.1);
  CHECK(absorbing.izu == 0.0);
  CHECK(std::abs(absorbing.rj_offset - (1.0 - binary_entropy(0.5, Unit::bits)
                                                  .amount())) < 1e-15);

  const BinaryRegionPoint noiseless = binary_point(0.0, 0.0, 0.0);
  CHECK(noiseless.izu == 1.0);
  CHECK(noiseless.rj_offset == 0.0);
  CHECK(noiseless.rl_offset == 0.0);

  const BinaryRegionPoint p = binary_point(0.0, 0.03, 0.1);
  CHECK(std::abs(p.izu - kIzuAtZero) < 1e-12);
  CHECK(std::abs(p.rj_offset - double(testutil::hb_oracle(0.124L))) < 1e-12);
  CHECK(std::abs(p.rl_offset -
                 double(testutil::hb_oracle(0.124L) -
                        testutil::hb_oracle(0.03L))) < 1e-12);

  CHECK_THROWS_AS(binary_point(0.6, 0.03, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(binary_point(0.1, -0.01, 0.1), std::invalid_argument);
}

TEST_CASE("binary_point invariants along the gamma grid") {
  double prev_izu = 2.0;
  for (int k = 0; k <= 100; ++k) {
    const double g = 0.5 * k / 100.0;
    const BinaryRegionPoint p = binary_point(g, 0.03, 0.1);
    CHECK(p.izu >= -1e-10);
    CHECK(p.izu <= 1.0 + 1e-10);
    CHECK(p.rj_offset >= -1e-10);
    CHECK(p.rl_offset >= -1e-10);
    CHECK(p.izu <= prev_izu + 1e-10);
    prev_izu = p.izu;
  }
  CHECK(std::abs(binary_point(0.0, 0.03, 0.1).rj_offset -
                 double(testutil::hb_oracle(
                     testutil::star_oracle(0.03L, 0.1L)))) < 1e-12);
  CHECK(binary_point(0.5, 0.03, 0.1).rj_offset == doctest::Approx(0.0));
}

TEST_CASE("binary_point agrees with the discrete evaluation") {
  const DiscreteBIS bis = binary_to_discrete(BinaryBIS(0.03, 0.1));
  for (int k = 0; k <= 100; ++k) {
    const double g = 0.5 * k / 100.0;
    const BinaryRegionPoint p = binary_point(g, 0.03, 0.1);
    const RegionBounds b =
        region_bounds(bis, bsc_test_channel(g), Unit::bits);
    CHECK(std::abs(p.izu - b.izu().amount()) < 1e-10);
    CHECK(std::abs(p.rj_offset -
                   (b.iyu().amount() - b.izu().amount())) < 1e-10);
    CHECK(std::abs(p.rl_offset -
                   (b.ixu().amount() - b.izu().amount())) < 1e-10);
  }
}

TEST_CASE("boundary_sweep boundary curves") {
  const auto zero_budget =
      boundary_sweep(0.03, 0.1, 0.0, 0.0, RcRule::full_izu, 101);
  for (const auto& row : zero_budget) {
    CHECK(row.feasible);
    CHECK(row.rg_max == 0.0);
  }

  const auto budget = boundary_sweep(0.03, 0.1, 0.2, 0.0, RcRule::full_izu, 101);
  for (const auto& row : budget) {
    CHECK(std::abs(row.rg_max - std::min(0.2, row.izu)) < 1e-12);
    // rj_min under the full rule collapses to 1 - H_b(gamma) + r_i.
    CHECK(std::abs(row.rj_min -
                   (1.0 - binary_entropy(row.gamma, Unit::bits).amount())) <
          1e-12);
  }
  CHECK(budget.front().rg_max == doctest::Approx(0.2));

  const auto half0 = boundary_sweep(0.03, 0.1, 0.0, 0.0, RcRule::half_izu, 101);
  const auto half2 = boundary_sweep(0.03, 0.1, 0.2, 0.0, RcRule::half_izu, 101);
  for (std::size_t k = 0; k < half0.size(); ++k) {
    CHECK(std::abs(half0[k].rg_max - 0.5 * half0[k].izu) < 1e-12);
    CHECK(half2[k].rg_max >= half0[k].rg_max);
    if (half0[k].izu > 1e-9) CHECK(half2[k].rg_max > half0[k].rg_max);
  }
}

TEST_CASE("boundary_sweep grid contract and ordering") {
  const auto rows = boundary_sweep(0.03, 0.1, 0.0, 0.0, RcRule::full_izu, 5);
  REQUIRE(rows.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(rows[k].gamma == doctest::Approx(0.125 * k).epsilon(1e-15));
  }
  CHECK_THROWS_AS(boundary_sweep(0.03, 0.1, 0.0, 0.0, RcRule::full_izu, 1),
                  std::invalid_argument);

  // Positive r_i under the full rule makes every point infeasible; rows are
  // kept and flagged.
  const auto infeasible =
      boundary_sweep(0.03, 0.1, 0.0, 0.05, RcRule::full_izu, 11);
  for (const auto& row : infeasible) {
    CHECK_FALSE(row.feasible);
    CHECK(std::isnan(row.rg_max));
  }

  // Threaded sweeps match the sequential ones exactly.
  const auto seq = boundary_sweep(0.03, 0.1, 0.2, 0.0, RcRule::half_izu, 513, 1);
  const auto par = boundary_sweep(0.03, 0.1, 0.2, 0.0, RcRule::half_izu, 513, 4);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    CHECK(seq[k].gamma == par[k].gamma);
    CHECK(seq[k].rg_max == par[k].rg_max);
  }
}

TEST_CASE("mgl_check slacks") {
  // The constant auxiliary meets the chain bound with equality for the
  // uniform source.
  const MglSlacks constant = mgl_check(0.03, 0.1, constant_test_channel(2));
  CHECK(std::abs(constant.eq_zx) < 1e-9);
  CHECK(std::abs(constant.eq_xy) < 1e-9);

  for (double g : {0.0, 0.05, 0.125, 0.25, 0.4, 0.5}) {
    const MglSlacks s = mgl_check(0.03, 0.1, bsc_test_channel(g));
    CHECK(std::abs(s.eq_zx) < 1e-9);
    CHECK(std::abs(s.eq_xy) < 1e-9);
  }

  auto gen = bis::rng::substream(41, 0);
  for (int i = 0; i < 300; ++i) {
    const std::size_t u_size = 2 + bis::rng::uniform_index(3, gen);
    const MglSlacks s =
        mgl_check(0.03, 0.1, testutil::random_test_channel(2, u_size, gen));
    CHECK(s.eq_zx >= -1e-9);
    CHECK(s.eq_xy >= -1e-9);
  }

  CHECK_THROWS_AS(mgl_check(0.03, 0.1, constant_test_channel(3)),
                  std::invalid_argument);
}

TEST_CASE("binary sweep CSV format") {
  const auto rows = boundary_sweep(0.03, 0.1, 0.2, 0.0, RcRule::full_izu, 5);
  std::ostringstream os;
  write_binary_sweep_csv(os, rows);
  const std::string text = os.str();
  CHECK(text.starts_with("# unit: bits\ngamma,izu,rj_min,rg_max,feasible\n"));
  CHECK(text.find("\r") == std::string::npos);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 7);  // comment + header + 5 rows
  CHECK(text.find("0.459249522037") != std::string::npos);
}
