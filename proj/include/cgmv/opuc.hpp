#pragma once
#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "cmv.hpp"
#include "errors.hpp"
#include "verblunsky.hpp"

namespace cgmv {

// finite Laurent polynomial sum_k c_k z^k, exponents k in [-K, K]
template <class S = double>
struct LaurentPoly {
  int K = 0;
  VecX<S> coeffs;  // index e + K holds the z^e coefficient

  Cx<S> coeff(int e) const {
    if (e < -K || e > K) return Cx<S>(0);
    return coeffs(e + K);
  }
  Cx<S> eval(Cx<S> z) const {
    if (z == Cx<S>(0)) throw ZeroArgument("Laurent evaluation at z = 0");
    // Horner in z from the top exponent, then divide by z^K
    Cx<S> acc{};
    for (int i = int(coeffs.size()) - 1; i >= 0; --i) acc = acc * z + coeffs(i);
    return acc * std::pow(z, -K);
  }
};

enum class PolyKind { FirstKind, SecondKind };

template <class S = double>
struct LaurentBasis {
  VerblunskySeq<S> seq;  // already negated for SecondKind
  PolyKind kind = PolyKind::FirstKind;
  int n = 0;
  std::vector<LaurentPoly<S>> polys;
};

// x0 = 1; x1 = (z^-1 - a0)/rho0;
// x_{2k+2} = [z rho_{2k} x_{2k} - (z conj(a_{2k}) + conj(a_{2k+1})) x_{2k+1}] / rho_{2k+1}
// x_{2k+3} = [z^-1 rho_{2k+1} x_{2k+1} - (z^-1 a_{2k+1} + a_{2k+2}) x_{2k+2}] / rho_{2k+2}
template <class S = double>
LaurentBasis<S> laurent_basis(const VerblunskySeq<S>& seq_in, int n, PolyKind kind) {
  if (n < 1) throw SizeTooSmall("basis length < 1");
  VerblunskySeq<S> seq = (kind == PolyKind::SecondKind) ? negate_seq(seq_in) : seq_in;
  for (long j = 0; j < n; ++j)
    if (std::abs(seq.alpha(j)) >= S(1)) throw BadModulus("|alpha| >= 1");
  int K = n / 2 + 2;
  auto zero = [&] { return LaurentPoly<S>{K, VecX<S>::Zero(2 * K + 1)}; };
  auto shift = [&](const LaurentPoly<S>& p, int by) {  // multiply by z^by
    LaurentPoly<S> q = zero();
    for (int e = -K; e <= K; ++e) {
      Cx<S> c = p.coeff(e);
      if (c != Cx<S>(0)) q.coeffs(e + by + K) = c;
    }
    return q;
  };
  auto axpy = [&](LaurentPoly<S>& acc, Cx<S> w, const LaurentPoly<S>& p) {
    acc.coeffs += w * p.coeffs;
  };

  LaurentBasis<S> basis{seq, kind, n, {}};
  basis.polys.reserve(n);
  LaurentPoly<S> x0 = zero();
  x0.coeffs(K) = Cx<S>(1);
  basis.polys.push_back(x0);
  if (n == 1) return basis;
  LaurentPoly<S> x1 = shift(x0, -1);
  axpy(x1, -seq.alpha(0), x0);
  x1.coeffs /= Cx<S>(seq.rho(0));
  basis.polys.push_back(x1);
  for (int j = 2; j < n; ++j) {
    const auto& xa = basis.polys[j - 2];
    const auto& xb = basis.polys[j - 1];
    LaurentPoly<S> nx = zero();
    if (j % 2 == 0) {
      long k2 = j - 2;  // 2k
      axpy(nx, Cx<S>(seq.rho(k2)), shift(xa, 1));
      axpy(nx, -std::conj(seq.alpha(k2)), shift(xb, 1));
      axpy(nx, -std::conj(seq.alpha(k2 + 1)), xb);
      nx.coeffs /= Cx<S>(seq.rho(k2 + 1));
    } else {
      long k1 = j - 2;  // 2k+1
      axpy(nx, Cx<S>(seq.rho(k1)), shift(xa, -1));
      axpy(nx, -seq.alpha(k1), shift(xb, -1));
      axpy(nx, -seq.alpha(k1 + 1), xb);
      nx.coeffs /= Cx<S>(seq.rho(k1 + 1));
    }
    basis.polys.push_back(nx);
  }
  return basis;
}

// pointwise recurrence evaluation (stable path used by spectral and residual checks)
template <class S = double>
VecX<S> eval_basis(const LaurentBasis<S>& basis, Cx<S> z, int count) {
  if (z == Cx<S>(0)) throw ZeroArgument("basis evaluation at z = 0");
  if (count < 1 || count > basis.n) throw LengthMismatch("count outside [1, n]");
  const auto& seq = basis.seq;
  VecX<S> x(count);
  Cx<S> zi = Cx<S>(1) / z;
  x(0) = Cx<S>(1);
  if (count == 1) return x;
  x(1) = (zi - seq.alpha(0)) / seq.rho(0);
  for (int j = 2; j < count; ++j) {
    if (j % 2 == 0) {
      long k2 = j - 2;
      x(j) = (z * S(seq.rho(k2)) * x(j - 2) -
              (z * std::conj(seq.alpha(k2)) + std::conj(seq.alpha(k2 + 1))) * x(j - 1)) /
             seq.rho(k2 + 1);
    } else {
      long k1 = j - 2;
      x(j) = (zi * S(seq.rho(k1)) * x(j - 2) -
              (zi * seq.alpha(k1) + seq.alpha(k1 + 1)) * x(j - 1)) /
             seq.rho(k1 + 1);
    }
  }
  return x;
}

// max over the first `rows` rows of |(C x(z))_i - z x_i(z)|
template <class S = double>
S eigen_residual(const CMVOperator<S>& c, const LaurentBasis<S>& basis, Cx<S> z, int rows) {
  if (rows + 2 >= basis.n) throw SizeTooSmall("rows + 2 must stay below basis length");
  VecX<S> x = eval_basis(basis, z, std::min(basis.n, rows + 3));
  S worst = 0;
  for (int i = 0; i < rows; ++i) {
    Cx<S> acc{};
    for (int j = std::max(0, i - 2); j <= std::min(int(x.size()) - 1, i + 2); ++j)
      acc += c.entry(i, j) * x(j);
    worst = std::max(worst, std::abs(acc - z * x(i)));
  }
  return worst;
}

}  // namespace cgmv
