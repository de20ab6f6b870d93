#pragma once
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "coin.hpp"
#include "errors.hpp"

namespace cgmv {

enum class SeqRule { Zero, NullOdd, NullEven, Constant, Explicit };

inline const char* seq_rule_name(SeqRule r) {
  switch (r) {
    case SeqRule::Zero: return "zero";
    case SeqRule::NullOdd: return "null-odd";
    case SeqRule::NullEven: return "null-even";
    case SeqRule::Constant: return "const";
    default: return "explicit";
  }
}

// alpha_j generator; rot applies the rewriting rule alpha_j -> alpha_j e^{i(j+1)w}
template <class S = double>
struct VerblunskySeq {
  SeqRule rule = SeqRule::Zero;
  Cx<S> p{};
  std::vector<Cx<S>> window;
  S rot = 0;

  Cx<S> alpha(long j) const {
    Cx<S> base{};
    switch (rule) {
      case SeqRule::Zero: base = Cx<S>(0); break;
      case SeqRule::NullOdd: base = (j % 2 == 0) ? p : Cx<S>(0); break;
      case SeqRule::NullEven: base = (j % 2 == 1) ? p : Cx<S>(0); break;
      case SeqRule::Constant: base = p; break;
      case SeqRule::Explicit:
        base = (j >= 0 && j < long(window.size())) ? window[j] : Cx<S>(0);
        break;
    }
    if (rot != S(0) && base != Cx<S>(0)) base *= std::exp(Cx<S>(0, S(j + 1) * rot));
    return base;
  }
  S rho(long j) const { return std::sqrt(S(1) - std::norm(alpha(j))); }

  static VerblunskySeq zero() { return {}; }
  static VerblunskySeq null_odd(Cx<S> a) {
    check(a);
    return {SeqRule::NullOdd, a, {}, S(0)};
  }
  static VerblunskySeq null_even(Cx<S> b) {
    check(b);
    return {SeqRule::NullEven, b, {}, S(0)};
  }
  static VerblunskySeq constant(Cx<S> al) {
    check(al);
    return {SeqRule::Constant, al, {}, S(0)};
  }
  static VerblunskySeq explicit_window(std::vector<Cx<S>> w) {
    for (auto& v : w) check(v);
    return {SeqRule::Explicit, Cx<S>(0), std::move(w), S(0)};
  }

 private:
  static void check(Cx<S> v) {
    if (std::abs(v) >= S(1)) throw BadModulus("|alpha| >= 1");
  }
};

template <class S>
VerblunskySeq<S> rotate_seq(VerblunskySeq<S> seq, S w) {
  seq.rot += w;
  return seq;
}

template <class S>
VerblunskySeq<S> negate_seq(VerblunskySeq<S> seq) {
  seq.p = -seq.p;
  for (auto& v : seq.window) v = -v;
  return seq;
}

}  // namespace cgmv
