#pragma once

// Exact rational feasibility for {x : A x = b, x >= 0}.
//
// Phase-one simplex on a dense tableau with artificial variables, Bland's rule
// for both entering and leaving choices. An infeasible system comes back with
// a Farkas vector z such that z^T A >= 0 and z^T b < 0.

#include "mvprob/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mvp {

using Matrix = std::vector<std::vector<Rational>>;

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> x;            // a solution when feasible
  std::vector<Rational> certificate;  // Farkas vector when infeasible
  std::size_t pivots = 0;
};

/// z^T A >= 0 componentwise and z^T b < 0.
inline bool verify_farkas(const Matrix& A, const std::vector<Rational>& b, const std::vector<Rational>& z) {
  if (z.size() != A.size()) return false;
  std::size_t n = A.empty() ? 0 : A[0].size();
  for (std::size_t j = 0; j < n; ++j) {
    Rational col(0);
    for (std::size_t i = 0; i < A.size(); ++i) col += z[i] * A[i][j];
    if (col < 0) return false;
  }
  Rational zb(0);
  for (std::size_t i = 0; i < b.size(); ++i) zb += z[i] * b[i];
  return zb < 0;
}

inline bool verify_solution(const Matrix& A, const std::vector<Rational>& b, const std::vector<Rational>& x) {
  for (const auto& v : x)
    if (v < 0) return false;
  for (std::size_t i = 0; i < A.size(); ++i) {
    Rational row(0);
    for (std::size_t j = 0; j < x.size(); ++j) row += A[i][j] * x[j];
    if (row != b[i]) return false;
  }
  return true;
}

inline FeasibilityResult solve_feasibility(const Matrix& A, const std::vector<Rational>& b) {
  const std::size_t m = A.size();
  if (b.size() != m) throw input_error("right-hand side has wrong length");
  const std::size_t n = m ? A[0].size() : 0;
  for (const auto& row : A)
    if (row.size() != n) throw input_error("constraint matrix is ragged");

  // Columns: n originals, m artificials, rhs.
  const std::size_t width = n + m + 1;
  std::vector<int> sign(m, 1);
  Matrix T(m, std::vector<Rational>(width, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j] * sign[i];
    T[i][n + i] = 1;
    T[i][width - 1] = b[i] * sign[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  auto cost = [&](std::size_t j) { return Rational(j >= n && j < n + m ? 1 : 0); };
  auto reduced_cost = [&](std::size_t j) {
    Rational d = cost(j);
    for (std::size_t i = 0; i < m; ++i) d -= cost(basis[i]) * T[i][j];
    return d;
  };

  FeasibilityResult out;
  for (;;) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < n + m; ++j)
      if (reduced_cost(j) < 0) {
        enter = j;
        break;
      }
    if (!enter) break;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][*enter] <= 0) continue;
      Rational ratio = T[i][width - 1] / T[i][*enter];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    // The phase-one objective is bounded below by 0, so a leaving row always exists.
    std::size_t r = *leave;
    Rational piv = T[r][*enter];
    for (auto& v : T[r]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || T[i][*enter] == 0) continue;
      Rational f = T[i][*enter];
      for (std::size_t j = 0; j < width; ++j) T[i][j] -= f * T[r][j];
    }
    basis[r] = *enter;
    ++out.pivots;
  }

  Rational objective(0);
  for (std::size_t i = 0; i < m; ++i) objective += cost(basis[i]) * T[i][width - 1];
  if (objective == 0) {
    out.feasible = true;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) out.x[basis[i]] = T[i][width - 1];
    return out;
  }
  // y' = c_B^T B^{-1}; B^{-1} sits in the artificial block of the tableau.
  out.certificate.assign(m, Rational(0));
  for (std::size_t k = 0; k < m; ++k) {
    Rational y(0);
    for (std::size_t i = 0; i < m; ++i) y += cost(basis[i]) * T[i][n + k];
    out.certificate[k] = -y * sign[k];
  }
  return out;
}

}  // namespace mvp
