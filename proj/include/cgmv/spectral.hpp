#pragma once
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "opuc.hpp"
#include "parallel.hpp"
#include "verblunsky.hpp"

namespace cgmv {

template <class S = double>
struct RadialLimitConfig {
  int k_min = 8, k_max = 14;      // mass-ladder radii r = 1 - 2^-k
  int k_weight = 13;              // weight Richardson pair (k_weight, k_weight + 1)
  int k_scan = 12;                // atom scan radius depth
  S tau_atom = S(1e-6);
  S flat_lo = S(0.7), flat_hi = S(1.3);  // genuine-atom ladder flatness window
  S neg_clip = S(1e-4);           // weight values in (-neg_clip, 0) are clipped to 0
  int golden_iters = 60;
  int ratio_depth = 400;          // fallback ratio-method depth
};

template <class S = double>
struct SpectralMeasure {
  VecR<S> theta;   // uniform grid on [-pi, pi)
  VecR<S> weight;  // w(theta_i) >= 0, zeroed on atom exclusion windows
  std::vector<std::pair<S, S>> atoms;  // (theta0, mass)
  S total = 0;     // mean(weight) + sum of masses
};

namespace detail {

// smaller-modulus root of A f^2 + B f - p = 0 (the Schur-class branch)
template <class S>
Cx<S> schur_root(Cx<S> A, Cx<S> B, Cx<S> p) {
  if (std::abs(A) < S(1e-300)) return p / B;
  Cx<S> disc = std::sqrt(B * B + S(4) * A * p);
  Cx<S> f1 = (-B + disc) / (S(2) * A);
  Cx<S> f2 = (-B - disc) / (S(2) * A);
  return (std::abs(f1) <= std::abs(f2)) ? f1 : f2;
}

template <class S>
Cx<S> ratio_caratheodory(const VerblunskySeq<S>& seq, Cx<S> z, int depth) {
  if (depth < 8) depth = 8;
  // a finite window goes exactly stationary once j clears it, so make sure we do
  if (seq.rule == SeqRule::Explicit && depth < long(seq.window.size()) + 16)
    depth = int(seq.window.size()) + 16;
  VerblunskySeq<S> neg = negate_seq(seq);
  // run both recurrences side by side, scalar form of eval_basis; the
  // second-kind over first-kind ratio tends to F along the odd (starred)
  // indices, where x_{2k+1} = z^{-k-1} phi*_{2k+1} up to shared normalization
  Cx<S> zi = Cx<S>(1) / z;
  Cx<S> xa = 1, xb = (zi - seq.alpha(0)) / seq.rho(0);
  Cx<S> ya = 1, yb = (zi - neg.alpha(0)) / neg.rho(0);
  Cx<S> cur = yb / xb, prev{};
  bool have_prev = false;
  for (int j = 2; j <= depth; ++j) {
    Cx<S> xn, yn;
    if (j % 2 == 0) {
      long k2 = j - 2;
      xn = (z * S(seq.rho(k2)) * xa -
            (z * std::conj(seq.alpha(k2)) + std::conj(seq.alpha(k2 + 1))) * xb) /
           seq.rho(k2 + 1);
      yn = (z * S(neg.rho(k2)) * ya -
            (z * std::conj(neg.alpha(k2)) + std::conj(neg.alpha(k2 + 1))) * yb) /
           neg.rho(k2 + 1);
    } else {
      long k1 = j - 2;
      xn = (zi * S(seq.rho(k1)) * xa - (zi * seq.alpha(k1) + seq.alpha(k1 + 1)) * xb) /
           seq.rho(k1 + 1);
      yn = (zi * S(neg.rho(k1)) * ya - (zi * neg.alpha(k1) + neg.alpha(k1 + 1)) * yb) /
           neg.rho(k1 + 1);
    }
    xa = xb; xb = xn;
    ya = yb; yb = yn;
    if (j % 2 == 1 && std::abs(xb) > S(1e-300)) {
      prev = cur;
      cur = yb / xb;
      if (std::abs(cur - prev) < S(1e-10)) return cur;
      have_prev = true;
    }
  }
  if (have_prev && std::abs(cur - prev) < S(1e-8)) return cur;
  throw NoConvergence("Caratheodory ratio did not settle by depth " + std::to_string(depth));
}

}  // namespace detail

// Caratheodory function of the measure of `seq` at |z| < 1. Closed Schur
// fixed-point forms cover the period-2 rules; the second/first-kind ratio is
// the fallback (and the test oracle for the closed forms).
template <class S = double>
Cx<S> caratheodory(const VerblunskySeq<S>& seq, Cx<S> z, int depth = 400) {
  if (std::abs(z) >= S(1)) throw InsideDiskViolation("|z| >= 1");
  if (z == Cx<S>(0)) return Cx<S>(1);  // F(0) = total mass = 1
  bool closed = (seq.rot == S(0));
  Cx<S> p = seq.p;
  switch (closed ? seq.rule : SeqRule::Explicit) {
    case SeqRule::Zero:
      return Cx<S>(1);
    case SeqRule::NullOdd: {
      Cx<S> f = detail::schur_root(std::conj(p) * z * z, Cx<S>(1) - z * z, p);
      return (Cx<S>(1) + z * f) / (Cx<S>(1) - z * f);
    }
    case SeqRule::NullEven: {
      Cx<S> f = detail::schur_root(std::conj(p) * z * z, Cx<S>(1) - z * z, p);
      return (Cx<S>(1) + z * z * f) / (Cx<S>(1) - z * z * f);
    }
    case SeqRule::Constant: {
      if (p == Cx<S>(0)) return Cx<S>(1);
      Cx<S> f = detail::schur_root(std::conj(p) * z, Cx<S>(1) - z, p);
      return (Cx<S>(1) + z * f) / (Cx<S>(1) - z * f);
    }
    default:
      return detail::ratio_caratheodory(seq, z, depth);
  }
}

// radial limit of Re F via two-point Richardson on r = 1 - 2^-k
template <class S = double>
S ac_weight(const VerblunskySeq<S>& seq, S theta, const RadialLimitConfig<S>& cfg = {}) {
  S r1 = S(1) - std::pow(S(2), S(-cfg.k_weight));
  S r2 = S(1) - std::pow(S(2), S(-(cfg.k_weight + 1)));
  Cx<S> e = std::exp(Cx<S>(0, theta));
  S w = 2 * caratheodory(seq, r2 * e, cfg.ratio_depth).real() -
        caratheodory(seq, r1 * e, cfg.ratio_depth).real();
  if (std::abs(w) < S(1e-8)) return S(0);
  return w;
}

// scan for F spikes, refine each angle by golden-section, then judge the
// (1-r)/2 * Re F ladder: genuine atoms are flat in k, band-edge divergences
// decay geometrically and are rejected
template <class S = double>
std::vector<std::pair<S, S>> point_masses(const VerblunskySeq<S>& seq,
                                          const RadialLimitConfig<S>& cfg = {}, int G = 4096) {
  const S pi = std::acos(S(-1));
  S r_scan = S(1) - std::pow(S(2), S(-cfg.k_scan));
  S half_width = (S(1) - r_scan) / 2;
  auto spike = [&](S th) { return half_width * std::abs(caratheodory(seq, r_scan * std::exp(Cx<S>(0, th)), cfg.ratio_depth)); };

  VecR<S> s(G);
  parallel_for(G, [&](long i) { s(i) = spike(-pi + 2 * pi * S(i) / S(G)); });

  std::vector<S> cands;
  for (int i = 0; i < G; ++i) {
    S prev = s((i + G - 1) % G), next = s((i + 1) % G);
    if (s(i) > cfg.tau_atom && s(i) >= prev && s(i) >= next)
      cands.push_back(-pi + 2 * pi * S(i) / S(G));
  }

  std::vector<std::pair<S, S>> out;
  const S gr = (std::sqrt(S(5)) - 1) / 2;
  for (S th0 : cands) {
    S a = th0 - 2 * (2 * pi / S(G)), b = th0 + 2 * (2 * pi / S(G));
    S c = b - gr * (b - a), d = a + gr * (b - a);
    S fc = spike(c), fd = spike(d);
    for (int it = 0; it < cfg.golden_iters; ++it) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - gr * (b - a); fc = spike(c);
      } else {
        a = c; c = d; fc = fd;
        d = a + gr * (b - a); fd = spike(d);
      }
    }
    S star = (a + b) / 2;
    // second golden pass at a deeper radius: an asymmetric background (band
    // edge near the atom) pulls the scan-radius argmax off the true angle by
    // O(u^2), and the mass ladder pays (dtheta/u)^2 of relative error for it
    {
      S r_f = S(1) - std::pow(S(2), S(-(cfg.k_scan + 4)));
      S hw_f = (S(1) - r_f) / 2;
      auto spike_f = [&](S th) {
        return hw_f * std::abs(caratheodory(seq, r_f * std::exp(Cx<S>(0, th)), cfg.ratio_depth));
      };
      S u_s = std::pow(S(2), S(-cfg.k_scan));
      S a2 = star - 2 * u_s, b2 = star + 2 * u_s;
      S c2 = b2 - gr * (b2 - a2), d2 = a2 + gr * (b2 - a2);
      S fc2 = spike_f(c2), fd2 = spike_f(d2);
      for (int it = 0; it < cfg.golden_iters; ++it) {
        if (fc2 > fd2) {
          b2 = d2; d2 = c2; fd2 = fc2;
          c2 = b2 - gr * (b2 - a2); fc2 = spike_f(c2);
        } else {
          a2 = c2; c2 = d2; fc2 = fd2;
          d2 = a2 + gr * (b2 - a2); fd2 = spike_f(d2);
        }
      }
      star = (a2 + b2) / 2;
    }
    // mass ladder at the refined angle
    int nk = cfg.k_max - cfg.k_min + 1;
    VecR<S> ladder(nk);
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
      S r = S(1) - std::pow(S(2), S(-k));
      ladder(k - cfg.k_min) =
          (S(1) - r) / 2 * caratheodory(seq, r * std::exp(Cx<S>(0, star)), cfg.ratio_depth).real();
    }
    S mass = 2 * ladder(nk - 1) - ladder(nk - 2);
    S flat_ref = ladder(nk - 1 - std::min(nk - 1, 4));  // ladder value 4 rungs up
    bool flat = flat_ref > S(0) && ladder(nk - 1) / flat_ref > cfg.flat_lo &&
                ladder(nk - 1) / flat_ref < cfg.flat_hi;
    if (mass > cfg.tau_atom && flat) {
      bool dup = false;
      for (auto& [t0, m0] : out)
        if (std::abs(std::remainder(t0 - star, 2 * pi)) < 2 * (2 * pi / S(G))) {
          dup = true;
          if (mass > m0) { t0 = star; m0 = mass; }
        }
      if (!dup) out.emplace_back(star, mass);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class S = double>
SpectralMeasure<S> extract_measure(const VerblunskySeq<S>& seq, const RadialLimitConfig<S>& cfg = {},
                                   int G = 4096) {
  if (G < 512) throw SizeTooSmall("grid resolution below 512");
  const S pi = std::acos(S(-1));
  SpectralMeasure<S> m;
  m.atoms = point_masses(seq, cfg, G);
  m.theta.resize(G);
  m.weight.resize(G);
  for (int i = 0; i < G; ++i) m.theta(i) = -pi + 2 * pi * S(i) / S(G);
  S excl = 4 * pi / S(G);
  std::vector<char> masked(G, 0);
  for (int i = 0; i < G; ++i)
    for (const auto& [t0, m0] : m.atoms)
      if (std::abs(std::remainder(m.theta(i) - t0, 2 * pi)) <= excl) masked[i] = 1;
  parallel_for(G, [&](long i) {
    m.weight(i) = masked[i] ? S(0) : ac_weight(seq, m.theta(i), cfg);
  });
  for (int i = 0; i < G; ++i) {
    if (m.weight(i) < S(0)) {
      if (m.weight(i) < -cfg.neg_clip)
        throw NumericalError("negative a.c. weight " + std::to_string(double(m.weight(i))) +
                             " at theta = " + std::to_string(double(m.theta(i))));
      m.weight(i) = S(0);
    }
  }
  m.total = m.weight.mean();
  for (const auto& [t0, m0] : m.atoms) m.total += m0;
  return m;
}

// trapezoid quadrature of z^t x_l(z) conj(x_m(z)) against the weight, plus atom terms
template <class S = double>
Cx<S> measure_moment(const SpectralMeasure<S>& mu, const LaurentBasis<S>& basis, int t, int l,
                     int m) {
  int count = std::max(l, m) + 1;
  long G = mu.theta.size();
  if (G < 512) throw SizeTooSmall("grid resolution below 512");
  VecX<S> acc_parts(G);
  parallel_for(G, [&](long i) {
    if (mu.weight(i) == S(0)) {
      acc_parts(i) = Cx<S>(0);
      return;
    }
    Cx<S> z = std::exp(Cx<S>(0, mu.theta(i)));
    VecX<S> x = eval_basis(basis, z, count);
    acc_parts(i) = mu.weight(i) * std::pow(z, t) * x(l) * std::conj(x(m));
  });
  Cx<S> acc = acc_parts.sum() / S(G);
  for (const auto& [t0, m0] : mu.atoms) {
    Cx<S> z = std::exp(Cx<S>(0, t0));
    VecX<S> x = eval_basis(basis, z, count);
    acc += m0 * std::pow(z, t) * x(l) * std::conj(x(m));
  }
  return acc;
}

}  // namespace cgmv
