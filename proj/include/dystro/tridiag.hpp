#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dystro {

// Thomas solve of a tridiagonal system, in place on rhs. sub[0] and
// sup[n-1] are ignored. No pivoting: every caller in this project builds
// strictly diagonally dominant systems (backward-difference diffusion with
// zero-flux boundaries), so breakdown cannot occur; asserted, not handled.
inline void solve_tridiagonal(std::span<const double> sub,
                              std::span<const double> diag,
                              std::span<const double> sup,
                              std::span<double> rhs,
                              std::vector<double>& scratch) {
  const std::size_t n = diag.size();
  assert(sub.size() == n && sup.size() == n && rhs.size() == n);
  scratch.resize(n);
  double piv = diag[0];
  assert(std::abs(piv) > 0.0);
  rhs[0] /= piv;
  for (std::size_t i = 1; i < n; ++i) {
    scratch[i] = sup[i - 1] / piv;
    piv = diag[i] - sub[i] * scratch[i];
    assert(std::abs(piv) > 0.0);
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] -= scratch[i + 1] * rhs[i + 1];
  }
}

}  // namespace dystro
