#pragma once
#include <cmath>
#include <complex>
#include <utility>

#include "coin.hpp"
#include "errors.hpp"

namespace cgmv {

template <class S>
int sgn0(S x) {
  return x > S(0) ? 1 : (x < S(0) ? -1 : 0);
}

namespace detail {

// nu^{2x} evaluated as (nu^2)^x with the 0^0 := 1 convention
template <class S>
S pow_even(S nu, long x) {
  if (x == 0) return S(1);
  return std::pow(nu * nu, S(x));
}

}  // namespace detail

// nu_I(a) = sgn(Re a)/rho * (sqrt(1 - Im(a)^2) - |Re a|), as printed; negative
// for Re a < 0 (only even powers of it are observable)
template <class S = double>
S nu_I(Cx<S> a) {
  if (std::abs(a) >= S(1)) throw ModulusOutOfRange("|a| >= 1");
  S re = a.real(), im = a.imag();
  if (re == S(0)) return S(0);  // sgn(0) = 0 convention
  S rho = std::sqrt(S(1) - std::norm(a));
  return S(sgn0(re)) / rho * (std::sqrt(S(1) - im * im) - std::abs(re));
}

template <class S = double>
S nu_II(Cx<S> b) {
  if (std::abs(b) >= S(1)) throw ModulusOutOfRange("|b| >= 1");
  return std::sqrt(S(1) - std::norm(b)) / std::abs(Cx<S>(1) + b);
}

// M(b) = (1 + sgn(|b|^2 + Re b)) (|b|^2 + Re b) / |1+b|^2 with sgn(0) = 0
template <class S = double>
S mass_M(Cx<S> b) {
  if (std::abs(b) >= S(1)) throw ModulusOutOfRange("|b| >= 1");
  S s = std::norm(b) + b.real();
  return (S(1) + S(sgn0(s))) * s / std::norm(Cx<S>(1) + b);
}

template <class S = double>
struct LimitParamsI {
  Cx<S> a;
  S rho = 1, nu = 0, theta = 0;
  Vec4c<S> coin_state = (Vec4c<S>() << 1, 0, 0, 0).finished();  // (alpha, beta, mu, zeta)

  static LimitParamsI make(Cx<S> a, S theta, const Vec4c<S>& coin_state) {
    if (std::abs(a) >= S(1)) throw ModulusOutOfRange("|a| >= 1");
    LimitParamsI p;
    p.a = a;
    p.rho = std::sqrt(S(1) - std::norm(a));
    p.nu = nu_I(a);
    p.theta = theta;
    p.coin_state = coin_state;
    return p;
  }
};

template <class S = double>
struct LimitParamsII {
  Cx<S> b;
  S rho = 1, nu = 1, mass = 0;

  static LimitParamsII make(Cx<S> b) {
    if (std::abs(b) >= S(1)) throw ModulusOutOfRange("|b| >= 1");
    return {b, std::sqrt(S(1) - std::norm(b)), nu_II(b), mass_M(b)};
  }
};

enum class Parity { Even, Odd };

// the interference amplitude alpha e^{i theta} + nu (mu + beta) + zeta nu e^{-i theta}
template <class S>
Cx<S> theorem1_overlap(const LimitParamsI<S>& p) {
  Cx<S> e = std::exp(Cx<S>(0, p.theta));
  const Vec4c<S>& c = p.coin_state;
  return c(DirR) * e + p.nu * (c(DirU) + c(DirL)) + c(DirD) * p.nu * std::conj(e);
}

// Theorem 1 limit mass, as printed:
// [Re(a)^2/(1-Im(a)^2)] |overlap|^2 (1 + 2 nu^2)(nu^{2x} + nu^{2y})
template <class S>
S theorem1_mass(const LimitParamsI<S>& p, long x, long y) {
  if (x < 0 || y < 0) throw SizeTooSmall("negative site");
  S re = p.a.real(), im = p.a.imag();
  S pre = re * re / (S(1) - im * im);
  S nu2 = p.nu * p.nu;
  return pre * std::norm(theorem1_overlap(p)) * (S(1) + 2 * nu2) *
         (detail::pow_even(p.nu, x) + detail::pow_even(p.nu, y));
}

// Theorem 3 limit mass: parity factor times |M|^2 at the origin, or
// |M|^2 (1 + 1/(2 nu^2))(nu^{2x} + nu^{2y}) off-origin
template <class S>
S theorem3_mass(const LimitParamsII<S>& p, long x, long y, Parity t_parity) {
  if (x < 0 || y < 0) throw SizeTooSmall("negative site");
  long t = t_parity == Parity::Even ? 0 : 1;
  if ((x + y + t) % 2 != 0) return S(0);
  S m2 = p.mass * p.mass;
  if (x == 0 && y == 0) return m2;
  S nu2 = p.nu * p.nu;
  return m2 * (S(1) + S(1) / (2 * nu2)) * (detail::pow_even(p.nu, x) + detail::pow_even(p.nu, y));
}

// Corollary 2: localization iff Re a != 0 and the overlap amplitude is nonzero
template <class S>
bool localizes_I(const Vec4c<S>& coin_state, Cx<S> a, S theta) {
  LimitParamsI<S> p = LimitParamsI<S>::make(a, theta, coin_state);
  return std::abs(a.real()) > S(1e-12) && std::abs(theorem1_overlap(p)) > S(1e-12);
}

// Corollary 4, both printed predicates; they disagree on part of the disk and
// are never reconciled here
template <class S = double>
std::pair<bool, bool> localizes_II(Cx<S> b) {
  if (std::abs(b) >= S(1)) throw ModulusOutOfRange("|b| >= 1");
  S x = b.real(), y = b.imag();
  bool paper_region = (x + S(0.5)) * (x + S(0.5)) + (y + S(0.5)) * (y + S(0.5)) > S(0.5);
  bool mass_criterion = mass_M(b) > S(1e-12);
  return {paper_region, mass_criterion};
}

}  // namespace cgmv
