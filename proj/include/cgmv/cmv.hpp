#pragma once
#include <Eigen/Dense>

#include <algorithm>
#include <complex>

#include "errors.hpp"
#include "verblunsky.hpp"

namespace cgmv {

// truncated CMV matrix: top-left n x n corner of the infinite L*M product,
// stored as five diagonals per row: band(i, c) = C(i, i - 2 + c)
template <class S = double>
struct CMVOperator {
  int n = 0;
  VerblunskySeq<S> seq;
  MatX<S> band;

  Cx<S> entry(int i, int j) const {
    if (i < 0 || j < 0 || i >= n || j >= n || std::abs(i - j) > 2) return Cx<S>(0);
    return band(i, j - i + 2);
  }
  MatX<S> dense() const {
    MatX<S> m = MatX<S>::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) m(i, j) = entry(i, j);
    return m;
  }
};

namespace detail {

// entries of the infinite L factor: Theta(alpha_{2j}) blocks on rows/cols (2j, 2j+1)
template <class S>
Cx<S> l_entry(const VerblunskySeq<S>& seq, long i, long m) {
  if (i / 2 != m / 2) return Cx<S>(0);
  long j2 = 2 * (i / 2);
  Cx<S> a = seq.alpha(j2);
  S rho = seq.rho(j2);
  if (i == j2) return (m == j2) ? std::conj(a) : Cx<S>(rho);
  return (m == j2) ? Cx<S>(rho) : -a;
}

// entries of the infinite M factor: 1 at (0,0), Theta(alpha_{2k+1}) on (2k+1, 2k+2)
template <class S>
Cx<S> m_entry(const VerblunskySeq<S>& seq, long m, long j) {
  if (m == 0 || j == 0) return (m == 0 && j == 0) ? Cx<S>(1) : Cx<S>(0);
  if ((m - 1) / 2 != (j - 1) / 2) return Cx<S>(0);
  long r = 2 * ((m - 1) / 2) + 1;
  Cx<S> a = seq.alpha(r);
  S rho = seq.rho(r);
  if (m == r) return (j == r) ? std::conj(a) : Cx<S>(rho);
  return (j == r) ? Cx<S>(rho) : -a;
}

}  // namespace detail

template <class S = double>
CMVOperator<S> build_cmv(const VerblunskySeq<S>& seq, int n) {
  if (n < 4 || n % 2 != 0) throw SizeTooSmall("need even n >= 4");
  for (long j = 0; j < n; ++j)
    if (std::abs(seq.alpha(j)) >= S(1)) throw BadModulus("|alpha_" + std::to_string(j) + "| >= 1");
  CMVOperator<S> op{n, seq, MatX<S>::Zero(n, 5)};
  for (long i = 0; i < n; ++i) {
    long b0 = 2 * (i / 2);
    for (long j = std::max(0l, i - 2); j <= std::min(long(n) - 1, i + 2); ++j) {
      Cx<S> v = detail::l_entry(seq, i, b0) * detail::m_entry(seq, b0, j) +
                detail::l_entry(seq, i, b0 + 1) * detail::m_entry(seq, b0 + 1, j);
      op.band(i, j - i + 2) = v;
    }
  }
  return op;
}

template <class S>
VecX<S> cmv_apply(const CMVOperator<S>& c, const VecX<S>& v) {
  if (v.size() != c.n) throw LengthMismatch("vector length != dim");
  VecX<S> out = VecX<S>::Zero(c.n);
  for (int i = 0; i < c.n; ++i) {
    Cx<S> acc{};
    for (int j = std::max(0, i - 2); j <= std::min(c.n - 1, i + 2); ++j)
      acc += c.band(i, j - i + 2) * v(j);
    out(i) = acc;
  }
  return out;
}

// (C^t)_{lm} by repeated banded application; the precondition keeps boundary
// contamination away from the (l, m) entry
template <class S>
Cx<S> cmv_power_entry(const CMVOperator<S>& c, int t, int l, int m) {
  if (2 * t + std::max(l, m) + 2 >= c.n)
    throw TruncationTooSmall("2t + max(l,m) + 2 must stay below dim");
  VecX<S> v = VecX<S>::Zero(c.n);
  v(m) = Cx<S>(1);
  for (int s = 0; s < t; ++s) v = cmv_apply(c, v);
  return v(l);
}

template <class S>
S unitarity_residual(const CMVOperator<S>& c) {
  int lo = 2, hi = c.n - 3;
  if (hi < lo) return S(0);
  auto col = [&](int j) {
    VecX<S> v = VecX<S>::Zero(5);
    for (int i = std::max(0, j - 2); i <= std::min(c.n - 1, j + 2); ++i) v(i - j + 2) = c.entry(i, j);
    return v;
  };
  S worst_norm = 0, worst_dot = 0;
  for (int j = lo; j <= hi; ++j) {
    worst_norm = std::max(worst_norm, std::abs(col(j).norm() - S(1)));
    for (int j2 = j + 1; j2 <= std::min(hi, j + 4); ++j2) {
      Cx<S> d{};
      for (int i = std::max(j2 - 2, j - 2); i <= std::min(j + 2, j2 + 2); ++i)
        d += std::conj(c.entry(i, j)) * c.entry(i, j2);
      worst_dot = std::max(worst_dot, std::abs(d));
    }
  }
  return worst_norm + worst_dot;
}

}  // namespace cgmv
