#pragma once
#include <random>

#include <cgmv/cgmv.hpp>

// random member of the paper-class family s V C(alpha) V*, V diagonal phases
inline cgmv::QuantumCoin<double> random_paper_coin(std::mt19937& rng) {
  std::uniform_real_distribution<double> mod(0.0, 0.85), ang(-3.14159, 3.14159);
  double m = mod(rng);
  cgmv::Cx<double> alpha = m * std::exp(cgmv::Cx<double>(0, ang(rng)));
  cgmv::Mat4<double> v = cgmv::Mat4<double>::Identity();
  for (int i = 0; i < 4; ++i) v(i, i) = std::exp(cgmv::Cx<double>(0, ang(rng)));
  double s = rng() % 2 == 0 ? 1.0 : -1.0;
  cgmv::Mat4<double> u = s * (v * cgmv::canonical_coin<double>(alpha).u * v.adjoint());
  return cgmv::validate_coin<double>(u).first;
}
