#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <vector>

namespace dnls::detail {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// Full Gauss-Legendre rule from Boost's tabulated half rules (Points in {7, 10, 15, 20}).
template <unsigned Points>
const GaussRule& gauss_legendre() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, Points>;
    GaussRule r;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.nodes.push_back(a[i]);
      r.weights.push_back(w[i]);
      if (a[i] != 0.0) {
        r.nodes.push_back(-a[i]);
        r.weights.push_back(w[i]);
      }
    }
    return r;
  }();
  return rule;
}

}  // namespace dnls::detail
