#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <cgmv/cgmv.hpp>

using namespace cgmv;
using C = Cx<double>;

// closed-form CMV entries with the alpha_{-1} = -1, rho_{-1} = 0 convention;
// written independently of the L*M product in cmv.hpp
static C closed_entry(const VerblunskySeq<double>& s, long i, long j) {
  auto al = [&](long k) { return k < 0 ? C(-1) : s.alpha(k); };
  auto rh = [&](long k) { return k < 0 ? 0.0 : s.rho(k); };
  if (i % 2 == 0) {
    long k = i / 2;
    if (j == 2 * k - 1) return rh(2 * k - 1) * std::conj(al(2 * k));
    if (j == 2 * k) return -al(2 * k - 1) * std::conj(al(2 * k));
    if (j == 2 * k + 1) return rh(2 * k) * std::conj(al(2 * k + 1));
    if (j == 2 * k + 2) return rh(2 * k) * rh(2 * k + 1);
  } else {
    long k = (i - 1) / 2;
    if (j == 2 * k - 1) return C(rh(2 * k - 1) * rh(2 * k));
    if (j == 2 * k) return -rh(2 * k) * al(2 * k - 1);
    if (j == 2 * k + 1) return -al(2 * k) * std::conj(al(2 * k + 1));
    if (j == 2 * k + 2) return -al(2 * k) * rh(2 * k + 1);
  }
  return C(0);
}

TEST_CASE("build_cmv reproduces the closed entry formulas") {
  std::vector<VerblunskySeq<double>> seqs = {
      VerblunskySeq<double>::zero(),
      VerblunskySeq<double>::null_odd(0.5),
      VerblunskySeq<double>::null_even(C(0.3, 0.3)),
      VerblunskySeq<double>::constant(C(-0.2, 0.45)),
      VerblunskySeq<double>::explicit_window({C(0.1, 0.2), C(-0.5, 0.1), C(0.3, -0.6), C(0.7, 0), C(0, 0.4)}),
  };
  for (const auto& s : seqs) {
    auto c = build_cmv(s, 12);
    for (long i = 0; i < 12; ++i)
      for (long j = 0; j < 12; ++j) CHECK(std::abs(c.entry(i, j) - closed_entry(s, i, j)) < 1e-14);
  }
}

TEST_CASE("entries are independent of the truncation size") {
  auto s = VerblunskySeq<double>::constant(C(0.4, -0.3));
  auto small = build_cmv(s, 12), big = build_cmv(s, 64);
  for (long i = 0; i < 10; ++i)
    for (long j = 0; j < 10; ++j) CHECK(std::abs(small.entry(i, j) - big.entry(i, j)) == 0);
}

TEST_CASE("bandwidth and dense agree") {
  auto c = build_cmv(VerblunskySeq<double>::null_odd(C(0.2, 0.4)), 16);
  auto d = c.dense();
  for (long i = 0; i < 16; ++i)
    for (long j = 0; j < 16; ++j) {
      CHECK(std::abs(c.entry(i, j) - d(i, j)) == 0);
      if (std::abs(i - j) > 2) CHECK(c.entry(i, j) == C(0));
    }
}

TEST_CASE("frozen power entries, null-odd 0.5") {
  auto c = build_cmv(VerblunskySeq<double>::null_odd(0.5), 64);
  CHECK(std::abs(cmv_power_entry(c, 1, 0, 0) - C(0.5)) < 1e-14);
  CHECK(std::abs(cmv_power_entry(c, 2, 0, 0) - C(0.25)) < 1e-14);
  CHECK(std::abs(cmv_power_entry(c, 2, 2, 3) - C(0.4330127018922193)) < 1e-14);
  CHECK(std::abs(cmv_power_entry(c, 3, 0, 0) - C(0.49999999999999994)) < 1e-13);
}

TEST_CASE("frozen power entries, null-even 0.5") {
  auto c = build_cmv(VerblunskySeq<double>::null_even(0.5), 64);
  CHECK(std::abs(cmv_power_entry(c, 1, 0, 0)) < 1e-15);
  CHECK(std::abs(cmv_power_entry(c, 2, 0, 0) - C(0.5)) < 1e-14);
  CHECK(std::abs(cmv_power_entry(c, 2, 1, 1) - C(0.5)) < 1e-14);
  CHECK(std::abs(cmv_power_entry(c, 4, 0, 0) - C(0.625)) < 1e-14);
  CHECK(std::abs(cmv_power_entry(c, 4, 1, 1) - C(0.625)) < 1e-14);
}

TEST_CASE("rotation rewriting shifts diagonal powers by e^{-itw}") {
  double w = 0.7;
  auto base = build_cmv(VerblunskySeq<double>::null_odd(0.5), 64);
  auto rot = build_cmv(rotate_seq(VerblunskySeq<double>::null_odd(0.5), w), 64);
  for (int t = 1; t <= 6; ++t) {
    C lhs = cmv_power_entry(rot, t, 0, 0);
    C rhs = std::exp(C(0, -t * w)) * cmv_power_entry(base, t, 0, 0);
    CHECK(std::abs(lhs - rhs) < 1e-13);
  }
}

TEST_CASE("unitarity of the interior") {
  for (auto s : {VerblunskySeq<double>::null_odd(C(0.2, 0.4)), VerblunskySeq<double>::constant(0.6),
                 VerblunskySeq<double>::null_even(C(0, -0.5))})
    CHECK(unitarity_residual(build_cmv(s, 40)) < 1e-14);
}

TEST_CASE("cmv_apply matches the dense product") {
  auto c = build_cmv(VerblunskySeq<double>::constant(C(0.1, 0.55)), 20);
  VecX<double> v(20);
  for (int i = 0; i < 20; ++i) v(i) = C(std::cos(0.3 * i), std::sin(0.7 * i));
  VecX<double> lhs = cmv_apply(c, v), rhs = c.dense() * v;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS((void)build_cmv(VerblunskySeq<double>::zero(), 7), SizeTooSmall);
  CHECK_THROWS_AS((void)build_cmv(VerblunskySeq<double>::zero(), 2), SizeTooSmall);
  auto c = build_cmv(VerblunskySeq<double>::zero(), 8);
  CHECK_THROWS_AS((void)cmv_power_entry(c, 4, 0, 0), TruncationTooSmall);
  VecX<double> bad = VecX<double>::Zero(9);
  CHECK_THROWS_AS((void)cmv_apply(c, bad), LengthMismatch);
  CHECK_THROWS_AS((void)VerblunskySeq<double>::null_odd(C(0.8, 0.8)), BadModulus);
}

TEST_CASE("all-zero sequence is the free shift in the CMV ordering") {
  auto c = build_cmv(VerblunskySeq<double>::zero(), 12);
  // rows follow the L*M pattern with alternating 2x2 shifts
  CHECK(std::abs(c.entry(0, 2) - C(1)) < 1e-15);
  CHECK(std::abs(c.entry(1, 0) - C(1)) < 1e-15);
  CHECK(std::abs(c.entry(2, 4) - C(1)) < 1e-15);
  CHECK(std::abs(c.entry(3, 1) - C(1)) < 1e-15);
  CHECK(std::abs(c.entry(4, 6) - C(1)) < 1e-15);
  CHECK(std::abs(c.entry(5, 3) - C(1)) < 1e-15);
  for (long i = 0; i < 12; ++i) {
    int nonzero = 0;
    for (long j = 0; j < 12; ++j) nonzero += c.entry(i, j) != C(0);
    if (i < 10) CHECK(nonzero == 1);
  }
}
