#pragma once
#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>

#include "errors.hpp"

namespace cgmv {

template <class S> using Cx = std::complex<S>;
template <class S> using Mat2 = Eigen::Matrix<Cx<S>, 2, 2>;
template <class S> using Mat4 = Eigen::Matrix<Cx<S>, 4, 4>;
template <class S> using MatX = Eigen::Matrix<Cx<S>, Eigen::Dynamic, Eigen::Dynamic>;
template <class S> using VecX = Eigen::Matrix<Cx<S>, Eigen::Dynamic, 1>;
template <class S> using VecR = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S> using MatR = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S> using Vec4c = Eigen::Matrix<Cx<S>, 4, 1>;

// direction order is fixed everywhere: R, L, U, D
enum Direction { DirR = 0, DirL = 1, DirU = 2, DirD = 3 };

enum class WalkKind { TypeI, TypeII };

// stored exactly as displayed; W|x,y,d> = sum_d' u(d', d) |..., d'>, so
// column = input direction and amp(d -> d') = u(d', d)
template <class S>
struct QuantumCoin {
  Mat4<S> u;
  bool paper_class = false;
};

template <class S>
struct CoinDerived {
  std::array<S, 4> sigma{};     // arg(c_ii)
  std::array<S, 4> rho_diag{};  // |c_ii|
  Cx<S> delta{1, 0};            // det U
  S theta = 0;                  // ((sigma_R + sigma_U) - (sigma_L + sigma_D)) / 2
};

template <class S>
struct PhasePlan {
  WalkKind kind = WalkKind::TypeI;
  std::array<S, 2> gamma{};  // used by TypeII only
  int size = 0;
};

template <class S = double>
Mat2<S> orientation_coin(Cx<S> alpha) {
  if (std::abs(alpha) >= S(1)) throw ModulusOutOfRange("|alpha| >= 1");
  S s = std::sqrt(S(1) - std::norm(alpha));
  Mat2<S> m;
  // the 2x2 factor of the C(alpha) display; the chain builders fix its
  // placement by explicit slot indices, see walk.hpp
  m << Cx<S>(s), -alpha, std::conj(alpha), Cx<S>(s);
  return m;
}

template <class S>
Mat4<S> kron22(const Mat2<S>& a, const Mat2<S>& b) {
  Mat4<S> k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

// c_ij = -Delta conj(c_ji) for pairs sharing a tensor slot; the antipodal
// pairs {R,D} and {L,U} carry the opposite sign (C(alpha) itself fixes this:
// (R,D) = alpha^2 against (D,R) = conj(alpha)^2)
template <class S>
S paper_class_residual(const Mat4<S>& u, Cx<S> delta) {
  S worst = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      bool antipodal = i + j == DirR + DirD || i + j == DirL + DirU;
      Cx<S> want = (antipodal ? delta : -delta) * std::conj(u(j, i));
      worst = std::max(worst, std::abs(u(i, j) - want));
    }
  return worst;
}

template <class S = double>
std::pair<QuantumCoin<S>, CoinDerived<S>> validate_coin(const Mat4<S>& entries) {
  if (!entries.allFinite()) throw NotUnitary("entries not finite");
  S ures = (entries.adjoint() * entries - Mat4<S>::Identity()).cwiseAbs().maxCoeff();
  if (ures > S(1e-12)) throw NotUnitary("max |U*U - I| = " + std::to_string(double(ures)));
  CoinDerived<S> d;
  d.delta = entries.determinant();
  for (int i = 0; i < 4; ++i) {
    d.rho_diag[i] = std::abs(entries(i, i));
    if (d.rho_diag[i] == S(0)) throw ZeroDiagonal("c_" + std::to_string(i) + std::to_string(i) + " = 0");
    d.sigma[i] = std::arg(entries(i, i));
  }
  d.theta = ((d.sigma[DirR] + d.sigma[DirU]) - (d.sigma[DirL] + d.sigma[DirD])) / S(2);
  QuantumCoin<S> coin{entries, paper_class_residual(entries, d.delta) < S(1e-10)};
  return {coin, d};
}

// the displayed C(alpha) = c2(alpha) (x) c2(alpha); direction order R,L,U,D
template <class S = double>
QuantumCoin<S> canonical_coin(Cx<S> alpha) {
  Mat2<S> c2 = orientation_coin<S>(alpha);
  return validate_coin<S>(kron22<S>(c2, c2)).first;
}

template <class S>
struct MappedParam {
  Cx<S> value{};
  bool in_range = false;
  void require_a() const { if (!in_range) throw AOutOfRange("|a| >= 1"); }
  void require_b() const { if (!in_range) throw BOutOfRange("|b| >= 1"); }
};

// printed map: a = (sum_{m != n} conj(c_mn)) * Delta^{1/2}, principal branch
template <class S>
MappedParam<S> verblunsky_a(const QuantumCoin<S>& coin) {
  if (!coin.paper_class) throw NotPaperClass("Verblunsky map needs a paper-class coin");
  Cx<S> sum = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) sum += std::conj(coin.u(i, j));
  Cx<S> a = sum * std::sqrt(coin.u.determinant());
  return {a, std::abs(a) < S(1)};
}

// printed map: b = (sum_{m != n} conj(c_mn)) * Delta * e^{-i(g1+g2)}
template <class S>
MappedParam<S> verblunsky_b(const QuantumCoin<S>& coin, std::array<S, 2> gamma) {
  if (!coin.paper_class) throw NotPaperClass("Verblunsky map needs a paper-class coin");
  Cx<S> sum = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) sum += std::conj(coin.u(i, j));
  Cx<S> b = sum * coin.u.determinant() * std::exp(Cx<S>(0, -(gamma[0] + gamma[1])));
  return {b, std::abs(b) < S(1)};
}

// recover alpha from a coin of the canonical form c2 (x) c2; nullopt when the
// reconstruction misses (the coin is not in the canonical family)
template <class S>
std::optional<Cx<S>> canonical_parameter(const QuantumCoin<S>& coin) {
  S s2 = std::abs(coin.u(DirR, DirR));
  if (s2 <= S(0)) return std::nullopt;
  S s = std::sqrt(s2);
  Cx<S> alpha = -coin.u(DirR, DirL) / s;
  if (std::abs(alpha) >= S(1)) return std::nullopt;
  Mat4<S> rebuilt = kron22<S>(orientation_coin<S>(alpha), orientation_coin<S>(alpha));
  if ((rebuilt - coin.u).cwiseAbs().maxCoeff() > S(1e-8)) return std::nullopt;
  return alpha;
}

// Lambda_I / Lambda_II diagonals as printed; flip_odd_sign switches the sign of the
// lambda_{2k-1} exponent (Type I), kept as a convention variant
template <class S>
VecX<S> lambda_diag(const PhasePlan<S>& plan, const CoinDerived<S>& d, bool flip_odd_sign = false) {
  if (plan.size < 2) throw SizeTooSmall("phase plan size < 2");
  VecX<S> lam(plan.size);
  S sru = d.sigma[DirR] + d.sigma[DirU];
  S sld = d.sigma[DirL] + d.sigma[DirD];
  S g = plan.gamma[0] + plan.gamma[1];
  for (int i = 0; i < plan.size; ++i) {
    S k, ex;
    if (plan.kind == WalkKind::TypeI) {
      if (i % 2 == 0) {  // lambda_{2k}, k = i/2 (lambda_0 = 1)
        k = S(i / 2);
        ex = -k * sru;
      } else {  // i = 2k-1
        k = S((i + 1) / 2);
        ex = (flip_odd_sign ? S(1) : S(-1)) * k * sld;
      }
    } else {
      if (i % 2 == 0) {
        k = S(i / 2);
        ex = -k * (sld - g);
      } else {
        k = S(i / 2);  // i = 2k+1
        ex = k * (sru - g);
      }
    }
    lam(i) = std::exp(Cx<S>(0, ex));
  }
  return lam;
}

template <class S = double>
Mat4<S> phase_matrix_D(S theta) {
  Mat4<S> d = Mat4<S>::Zero();
  d(0, 0) = std::exp(Cx<S>(0, theta));
  d(1, 1) = Cx<S>(1);
  d(2, 2) = Cx<S>(1);
  d(3, 3) = std::exp(Cx<S>(0, -theta));
  return d;
}

}  // namespace cgmv
