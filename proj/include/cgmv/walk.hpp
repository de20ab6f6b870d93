#pragma once
#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmv.hpp"
#include "coin.hpp"
#include "errors.hpp"
#include "verblunsky.hpp"

namespace cgmv {

template <class S = double>
struct WalkState {
  WalkKind kind = WalkKind::TypeI;
  long xmax = 0;  // amplitudes live on [0, xmax]^2
  long time = 0;
  std::array<MatX<S>, 4> amp;  // [direction](x, y)

  S norm_sq() const {
    S t{};
    for (const auto& a : amp) t += a.squaredNorm();
    return t;
  }
};

// initial data for both kinds: amps feeds Type I, the deltas feed Type II
template <class S = double>
struct WalkSeed {
  Vec4c<S> amps = (Vec4c<S>() << 1, 0, 0, 0).finished();  // (alpha, beta, mu, zeta)
  S delta1 = 0, delta2 = 0;
};

namespace detail {

template <class S>
WalkState<S> blank_state(WalkKind kind, long xmax) {
  if (xmax < 4) throw SizeTooSmall("truncation xmax < 4");
  WalkState<S> st;
  st.kind = kind;
  st.xmax = xmax;
  for (auto& a : st.amp) a = MatX<S>::Zero(xmax + 1, xmax + 1);
  return st;
}

}  // namespace detail

template <class S = double>
WalkState<S> initial_state_I(const Vec4c<S>& amps, long xmax) {
  if (std::abs(amps.norm() - S(1)) > S(1e-12)) throw NotNormalized("Type I coin state must be unit norm");
  WalkState<S> st = detail::blank_state<S>(WalkKind::TypeI, xmax);
  for (int d = 0; d < 4; ++d) st.amp[d](0, 0) = amps(d);
  return st;
}

// printed state e^{i d1}|0,0,L> + e^{i d2}|0,0,D> has norm sqrt(2); stored scaled by 1/sqrt(2)
template <class S = double>
WalkState<S> initial_state_II(S delta1, S delta2, long xmax) {
  WalkState<S> st = detail::blank_state<S>(WalkKind::TypeII, xmax);
  S r = S(1) / std::sqrt(S(2));
  st.amp[DirL](0, 0) = r * std::exp(Cx<S>(0, delta1));
  st.amp[DirD](0, 0) = r * std::exp(Cx<S>(0, delta2));
  return st;
}

template <class S = double>
WalkState<S> basis_state(WalkKind kind, long xmax, long x, long y, Direction d) {
  WalkState<S> st = detail::blank_state<S>(kind, xmax);
  if (x < 0 || y < 0 || x > xmax || y > xmax) throw SizeTooSmall("basis site outside the truncation square");
  st.amp[d](x, y) = Cx<S>(1);
  return st;
}

// One step of the quarter-plane walk. Interior sites mix by the coin columns
// (amp(d -> d') = u(d', d)) and transport R -> x+1, L -> x-1, U -> y+1,
// D -> y-1. Boundaries follow the printed origin equations plus the unique
// norm-preserving completions: Type I walls send the blocked L/D output into
// the unused R/U slot at the same site (corner arrivals (1,0,L) -> (0,0,R),
// (0,1,D) -> (0,0,U)); Type II applies no coin at the origin, transfers
// L -> e^{i g1}(1,0,R) and D -> e^{i g2}(0,1,U), and deflects wall output
// along the wall ((0,y,L) -> (0,y+1,R), (x,0,D) -> (x+1,0,U)) so x+y always
// changes by one.
template <class S>
WalkState<S> step(const WalkState<S>& st, const QuantumCoin<S>& coin,
                  std::array<S, 2> gamma = {S(0), S(0)}) {
  const long X = st.xmax, N = X + 1;
  for (const auto& a : st.amp) {
    S edge = std::max(a.bottomRows(2).cwiseAbs().maxCoeff(), a.rightCols(2).cwiseAbs().maxCoeff());
    if (edge > S(1e-14))
      throw TruncationOverflow("support reached the truncation boundary at t = " + std::to_string(st.time));
  }

  std::array<MatX<S>, 4> mix;
  for (int d = 0; d < 4; ++d)
    mix[d] = coin.u(d, 0) * st.amp[0] + coin.u(d, 1) * st.amp[1] + coin.u(d, 2) * st.amp[2] +
             coin.u(d, 3) * st.amp[3];

  WalkState<S> out = detail::blank_state<S>(st.kind, X);
  out.time = st.time + 1;
  auto& nr = out.amp[DirR];
  auto& nl = out.amp[DirL];
  auto& nu = out.amp[DirU];
  auto& nd = out.amp[DirD];

  if (st.kind == WalkKind::TypeI) {
    nr.block(1, 0, X, N) += mix[DirR].block(0, 0, X, N);
    nr.block(0, 1, 1, X) += mix[DirL].block(0, 1, 1, X);
    nr(0, 0) += mix[DirL](1, 0);
    nl.block(0, 1, 1, X) += mix[DirL].block(1, 1, 1, X);
    nl.block(1, 0, X - 1, N) += mix[DirL].block(2, 0, X - 1, N);
    nl(0, 0) += mix[DirL](0, 0);
    nu.block(0, 1, N, X) += mix[DirU].block(0, 0, N, X);
    nu.block(1, 0, X, 1) += mix[DirD].block(1, 0, X, 1);
    nu(0, 0) += mix[DirD](0, 1);
    nd.block(1, 0, X, 1) += mix[DirD].block(1, 1, X, 1);
    nd.block(0, 1, N, X - 1) += mix[DirD].block(0, 2, N, X - 1);
    nd(0, 0) += mix[DirD](0, 0);
    return out;
  }

  std::array<Cx<S>, 4> org{st.amp[0](0, 0), st.amp[1](0, 0), st.amp[2](0, 0), st.amp[3](0, 0)};
  for (auto& m : mix) m(0, 0) = Cx<S>(0);
  nr.block(1, 0, X, N) += mix[DirR].block(0, 0, X, N);
  nr(1, 0) += std::exp(Cx<S>(0, gamma[0])) * org[DirL];
  nr(0, 1) += org[DirR];  // pass-through keeps the operator isometric; never fed in practice
  nr.block(0, 2, 1, X - 1) += mix[DirL].block(0, 1, 1, X - 1);
  nl.block(0, 0, X, N) += mix[DirL].block(1, 0, X, N);
  nu.block(0, 1, N, X) += mix[DirU].block(0, 0, N, X);
  nu(0, 1) += std::exp(Cx<S>(0, gamma[1])) * org[DirD];
  nu(1, 0) += org[DirU];  // pass-through
  nu.block(2, 0, X - 1, 1) += mix[DirD].block(1, 0, X - 1, 1);
  nd.block(0, 0, N, X) += mix[DirD].block(0, 1, N, X);
  return out;
}

template <class S>
MatR<S> distribution(const WalkState<S>& st) {
  MatR<S> p = MatR<S>::Zero(st.xmax + 1, st.xmax + 1);
  for (const auto& a : st.amp) p += a.cwiseAbs2();
  return p;
}

// block of <x2,y2,d_out| W^t |x1,y1,d_in>; Type I admits all four inputs,
// Type II the (L, D) pair, so the blocks are 4x4 and 4x2
template <class S>
MatX<S> passage_weight(WalkKind kind, const QuantumCoin<S>& coin, std::array<S, 2> gamma, long t,
                       std::array<long, 2> from, std::array<long, 2> to) {
  if (t < 0) throw SizeTooSmall("negative time");
  long far = std::max({from[0], from[1], to[0], to[1]});
  long xmax = far + t + 4;
  std::vector<Direction> ins = kind == WalkKind::TypeI
                                   ? std::vector<Direction>{DirR, DirL, DirU, DirD}
                                   : std::vector<Direction>{DirL, DirD};
  MatX<S> block(4, long(ins.size()));
  for (long c = 0; c < long(ins.size()); ++c) {
    WalkState<S> st = basis_state<S>(kind, xmax, from[0], from[1], ins[c]);
    for (long k = 0; k < t; ++k) st = step(st, coin, gamma);
    for (int d = 0; d < 4; ++d) block(d, c) = st.amp[d](to[0], to[1]);
  }
  return block;
}

// ---- half-line sector -------------------------------------------------------
// The paper's correspondence lives on a chain: Type I with slots
// (x,in) <-> 2x, (x,out) <-> 2x+1, wall-flipping shift, then the site coin;
// Type II with slots (0,in) <-> 0, (k,out) <-> 2k-1, (k,in) <-> 2k, site coin
// first, then the shift with a phased transfer e^{i(g1+g2)} at the origin.
// With the site coin derived from the canonical parameter these equal
// C_(p,0,p,...) resp. C_(0,p,0,...), p = -conj(alpha), entrywise.

template <class S>
Mat2<S> site_coin(const QuantumCoin<S>& coin) {
  auto ah = canonical_parameter(coin);
  if (!ah) throw NotPaperClass("coin is not of the canonical C(alpha) family; chain sector undefined");
  return orientation_coin<S>(*ah);
}

// u2 placement is fixed by the slot identities above: on a Type I site pair
// (2x, 2x+1) the block is [[u2(1,1), u2(0,1)], [u2(1,0), u2(0,0)]]
template <class S>
MatX<S> half_line_matrix(WalkKind kind, const Mat2<S>& u2, S gamma_sum, long n) {
  if (n < 8 || n % 2 != 0) throw SizeTooSmall("chain dimension must be even and >= 8");
  MatX<S> sh = MatX<S>::Zero(n, n), kc = MatX<S>::Zero(n, n);
  if (kind == WalkKind::TypeI) {
    sh(1, 0) = Cx<S>(1);
    for (long x = 0; 2 * x + 3 < n; ++x) sh(2 * x + 3, 2 * x + 1) = Cx<S>(1);
    for (long x = 1; 2 * x < n; ++x) sh(2 * x - 2, 2 * x) = Cx<S>(1);
    for (long x = 0; 2 * x + 1 < n; ++x) {
      kc(2 * x, 2 * x) = u2(1, 1);
      kc(2 * x, 2 * x + 1) = u2(0, 1);
      kc(2 * x + 1, 2 * x) = u2(1, 0);
      kc(2 * x + 1, 2 * x + 1) = u2(0, 0);
    }
    return kc * sh;
  }
  kc(0, 0) = Cx<S>(1);
  for (long k = 1; 2 * k < n; ++k) {
    kc(2 * k - 1, 2 * k - 1) = u2(0, 0);
    kc(2 * k - 1, 2 * k) = u2(1, 0);
    kc(2 * k, 2 * k - 1) = u2(0, 1);
    kc(2 * k, 2 * k) = u2(1, 1);
  }
  kc(n - 1, n - 1) = Cx<S>(1);  // orphan top out-slot of the truncation
  sh(1, 0) = std::exp(Cx<S>(0, gamma_sum));
  sh(0, 2) = Cx<S>(1);
  for (long k = 1; 2 * k + 1 < n; ++k) sh(2 * k + 1, 2 * k - 1) = Cx<S>(1);
  for (long k = 2; 2 * k < n; ++k) sh(2 * k - 2, 2 * k) = Cx<S>(1);
  return sh * kc;
}

namespace detail {

// O(n) application of the chain operator above
template <class S>
void chain_step(WalkKind kind, const Mat2<S>& u2, Cx<S> twist, VecX<S>& psi, VecX<S>& scratch) {
  const long n = psi.size();
  scratch.setZero();
  if (kind == WalkKind::TypeI) {
    scratch(1) = psi(0);
    for (long x = 0; 2 * x + 3 < n; ++x) scratch(2 * x + 3) = psi(2 * x + 1);
    for (long x = 1; 2 * x < n; ++x) scratch(2 * x - 2) = psi(2 * x);
    for (long x = 0; 2 * x + 1 < n; ++x) {
      Cx<S> vin = scratch(2 * x), vout = scratch(2 * x + 1);
      psi(2 * x) = u2(1, 1) * vin + u2(0, 1) * vout;
      psi(2 * x + 1) = u2(1, 0) * vin + u2(0, 0) * vout;
    }
    return;
  }
  scratch(0) = psi(0);
  for (long k = 1; 2 * k < n; ++k) {
    Cx<S> vout = psi(2 * k - 1), vin = psi(2 * k);
    scratch(2 * k - 1) = u2(0, 0) * vout + u2(1, 0) * vin;
    scratch(2 * k) = u2(0, 1) * vout + u2(1, 1) * vin;
  }
  scratch(n - 1) = psi(n - 1);
  psi.setZero();
  psi(1) = twist * scratch(0);
  psi(0) = scratch(2);
  for (long k = 1; 2 * k + 1 < n; ++k) psi(2 * k + 1) = scratch(2 * k - 1);
  for (long k = 2; 2 * k < n; ++k) psi(2 * k - 2) = scratch(2 * k);
}

}  // namespace detail

// P_t(k,k) for t = 0..T rows and k = 0..kmax cols under the chain dynamics;
// diagonal site (k,k) carries chain slots {2k, 2k+1}
template <class S>
MatR<S> chain_diag_probs(WalkKind kind, const QuantumCoin<S>& coin, std::array<S, 2> gamma,
                         const WalkSeed<S>& seed, long T, long kmax) {
  if (T < 16) throw SizeTooSmall("horizon T < 16");
  if (kmax < 0) throw SizeTooSmall("negative kmax");
  Mat2<S> u2 = site_coin(coin);
  long n = 2 * T + 8;
  VecX<S> psi = VecX<S>::Zero(n), scratch = VecX<S>::Zero(n);
  if (kind == WalkKind::TypeI) {
    Cx<S> c0 = seed.amps(DirL) + seed.amps(DirD);  // beta + zeta folds onto the in-slot
    Cx<S> c1 = seed.amps(DirR) + seed.amps(DirU);  // alpha + mu onto the out-slot
    S nrm = std::sqrt(std::norm(c0) + std::norm(c1));
    if (nrm < S(1e-12))
      throw NumericalError("initial coin state has no weight in the diagonal sector");
    psi(0) = c0 / nrm;
    psi(1) = c1 / nrm;
  } else {
    S r = S(1) / std::sqrt(S(2));
    psi(0) = r * std::exp(Cx<S>(0, seed.delta1));
    psi(1) = r * std::exp(Cx<S>(0, seed.delta2));
  }
  Cx<S> twist = std::exp(Cx<S>(0, gamma[0] + gamma[1]));
  MatR<S> p(T + 1, kmax + 1);
  for (long t = 0;; ++t) {
    for (long k = 0; k <= kmax; ++k) p(t, k) = std::norm(psi(2 * k)) + std::norm(psi(2 * k + 1));
    if (t == T) break;
    detail::chain_step(kind, u2, twist, psi, scratch);
  }
  return p;
}

template <class S = double>
struct ReturnStats {
  S cesaro = 0;  // (1/T) sum_{t<T} P_t(0,0)
  S tail = 0;    // same average over the last T/4 of those steps
};

template <class S>
ReturnStats<S> time_avg_return(WalkKind kind, const QuantumCoin<S>& coin, std::array<S, 2> gamma,
                               const WalkSeed<S>& seed, long T) {
  MatR<S> p = chain_diag_probs(kind, coin, gamma, seed, T, 0);
  long q = T / 4;
  return {p.col(0).head(T).mean(), p.col(0).segment(T - q, q).mean()};
}

// P-bar(k)/P-bar(0) with P-bar averaged over t in [3T/4, T]; localized walks
// settle on nu^{2k}
template <class S>
VecR<S> decay_profile(WalkKind kind, const QuantumCoin<S>& coin, std::array<S, 2> gamma,
                      const WalkSeed<S>& seed, long T, long kmax) {
  MatR<S> p = chain_diag_probs(kind, coin, gamma, seed, T, kmax);
  long lo = 3 * T / 4, cnt = T - lo + 1;
  VecR<S> avg = p.block(lo, 0, cnt, kmax + 1).colwise().mean().transpose();
  if (avg(0) <= S(0)) throw NumericalError("origin probability vanished over the averaging window");
  return (avg / avg(0)).eval();
}

// ---- correspondence ---------------------------------------------------------

template <class S = double>
struct CorrespondenceReport {
  S residual = 0;
  std::string convention;
  bool no_convention_fits = false;
  std::vector<std::pair<std::string, S>> table;  // every enumerated variant
};

// max |W - Lambda C Lambda*| over the interior (i, j <= n-3), minimized over
// the enumerated conventions; Type II compares against e^{i(g1+g2)} Lambda C Lambda*
template <class S>
CorrespondenceReport<S> correspondence_residual(WalkKind kind, const QuantumCoin<S>& coin,
                                                std::array<S, 2> gamma, long n) {
  if (n < 8 || n % 2 != 0) throw SizeTooSmall("chain dimension must be even and >= 8");
  if (!coin.paper_class) throw NotPaperClass("correspondence needs a paper-class coin");
  auto [revalidated, der] = validate_coin<S>(coin.u);
  (void)revalidated;

  std::vector<std::pair<std::string, Mat2<S>>> sites;
  auto ah = canonical_parameter(coin);
  if (ah) sites.emplace_back("orientation(alpha-hat)", orientation_coin<S>(*ah));
  Mat2<S> fold;  // fold amp(p -> q) = (1/2) sum_{src in G(p), dst in G(q)} u(dst, src)
  const std::array<std::array<int, 2>, 2> grp{{{DirR, DirU}, {DirL, DirD}}};  // 0 = out, 1 = in
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      Cx<S> z{};
      for (int src : grp[p])
        for (int dst : grp[q]) z += coin.u(dst, src);
      fold(p, q) = z / S(2);
    }
  sites.emplace_back("sym-fold", fold);
  sites.emplace_back("sym-fold-transpose", Mat2<S>(fold.transpose()));

  std::vector<std::pair<std::string, VerblunskySeq<S>>> params;
  if (ah) {
    Cx<S> p = -std::conj(*ah);
    params.emplace_back("derived -conj(alpha-hat)", kind == WalkKind::TypeI
                                                        ? VerblunskySeq<S>::null_odd(p)
                                                        : VerblunskySeq<S>::null_even(p));
  }
  MappedParam<S> printed = kind == WalkKind::TypeI ? verblunsky_a(coin) : verblunsky_b(coin, gamma);
  if (printed.in_range) {
    params.emplace_back("printed a", kind == WalkKind::TypeI
                                         ? VerblunskySeq<S>::null_odd(printed.value)
                                         : VerblunskySeq<S>::null_even(printed.value));
    Cx<S> w = std::sqrt(der.delta);
    std::vector<Cx<S>> av(size_t(n), Cx<S>(0));
    for (long j = kind == WalkKind::TypeI ? 0 : 1; j < n; j += 2)
      av[size_t(j)] = printed.value * std::pow(w, -(j + 1));
    params.emplace_back("printed a_j Delta^{-(j+1)/2}", VerblunskySeq<S>::explicit_window(av));
  }
  if (params.empty()) {
    if (kind == WalkKind::TypeI) throw AOutOfRange("printed |a| >= 1 and no canonical parameter");
    throw BOutOfRange("printed |b| >= 1 and no canonical parameter");
  }

  S gsum = gamma[0] + gamma[1];
  Cx<S> pref = kind == WalkKind::TypeII ? std::exp(Cx<S>(0, gsum)) : Cx<S>(1);
  PhasePlan<S> plan{kind, {gamma[0], gamma[1]}, int(n)};
  CorrespondenceReport<S> rep;
  rep.residual = std::numeric_limits<S>::infinity();
  for (const auto& [sname, u2] : sites) {
    MatX<S> w = half_line_matrix(kind, u2, gsum, n);
    for (const auto& [pname, seq] : params) {
      CMVOperator<S> c = build_cmv(seq, n);
      for (int flip = 0; flip < 2; ++flip) {
        VecX<S> lam = lambda_diag(plan, der, flip != 0);
        for (int place = 0; place < 2; ++place) {
          S worst = 0;
          for (long i = 0; i + 2 < n; ++i)
            for (long j = 0; j + 2 < n; ++j) {
              Cx<S> ph = place == 0 ? lam(i) * std::conj(lam(j)) : std::conj(lam(i)) * lam(j);
              worst = std::max(worst, std::abs(w(i, j) - pref * ph * c.entry(i, j)));
            }
          std::string desc = sname + " | " + pname + (flip ? " | lambda flipped" : " | lambda printed") +
                             (place == 0 ? " | L C L*" : " | L* C L");
          rep.table.emplace_back(desc, worst);
          if (worst < rep.residual) {
            rep.residual = worst;
            rep.convention = desc;
          }
        }
      }
    }
  }
  rep.no_convention_fits = rep.residual > S(1e-6);
  return rep;
}

}  // namespace cgmv
