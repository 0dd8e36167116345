#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace verhulst::quad::detail {

// Newton iteration on P_n at the Chebyshev-like initial guesses, carried out
// in Real. `abs_fn`/`cos_fn` let binary128 callers pass quadmath functions.
template <class Real, class Cos, class Abs>
void legendre_rule(int n, std::vector<Real>& nodes, std::vector<Real>& weights, Cos cos_fn,
                   Abs abs_fn, Real pi, Real eps) {
  nodes.assign(static_cast<std::size_t>(n), Real(0));
  weights.assign(static_cast<std::size_t>(n), Real(0));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    Real x = cos_fn(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1;
      Real p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real pk = ((Real(2 * k - 1)) * x * p1 - Real(k - 1) * p0) / Real(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1;
      dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
      const Real dx = p1 / dp;
      x -= dx;
      if (abs_fn(dx) <= eps) {
        // one more polish step for the derivative at the converged node
        p0 = 1;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const Real pk = ((Real(2 * k - 1)) * x * p1 - Real(k - 1) * p0) / Real(k);
          p0 = p1;
          p1 = pk;
        }
        dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
        break;
      }
    }
    const Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(m - 1)] = 0;
}

}  // namespace verhulst::quad::detail
