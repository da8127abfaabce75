#pragma once

// The Hausdorff moment problem on [0,1] at finite order: forward difference
// tables, the moment condition, moments of grid measures, Bernstein-style
// reconstruction and an exact LP fit.

#include "mvprob/lp.hpp"
#include "mvprob/states.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mvp {

class MomentSequence {
 public:
  explicit MomentSequence(std::vector<Rational> m) : m_(std::move(m)) {
    if (m_.empty()) throw input_error("moment sequence must be nonempty");
    for (auto& v : m_) {
      v.canonicalize();
      if (!in_unit_interval(v)) throw input_error("moment " + v.get_str() + " outside [0,1]");
    }
  }

  std::size_t size() const { return m_.size(); }
  /// Highest order K (m_0..m_K).
  std::size_t order() const { return m_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return m_.at(k); }
  const std::vector<Rational>& values() const { return m_; }

  friend bool operator==(const MomentSequence& a, const MomentSequence& b) { return a.m_ == b.m_; }

 private:
  std::vector<Rational> m_;
};

/// Delta^r m_k for r + k <= K.
class DeltaTable {
 public:
  explicit DeltaTable(const MomentSequence& m) : K_(m.order()) {
    rows_.push_back(m.values());
    for (std::size_t r = 1; r <= K_; ++r) {
      const auto& prev = rows_.back();
      std::vector<Rational> row(prev.size() - 1);
      for (std::size_t k = 0; k + 1 < prev.size(); ++k) row[k] = prev[k + 1] - prev[k];
      rows_.push_back(std::move(row));
    }
  }

  std::size_t order() const { return K_; }
  const Rational& at(std::size_t r, std::size_t k) const {
    if (r + k > K_) throw input_error("delta table index out of range");
    return rows_[r][k];
  }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

 private:
  std::size_t K_;
  std::vector<std::vector<Rational>> rows_;
};

inline DeltaTable delta_table(const MomentSequence& m) { return DeltaTable(m); }

/// (-1)^r Delta^r m_k evaluated as sum_h C(r,h) (-1)^h m_{k+h}.
inline Rational signed_difference_binomial(const MomentSequence& m, std::size_t r, std::size_t k) {
  if (r + k > m.order()) throw input_error("index out of range");
  Rational out(0);
  for (std::size_t h = 0; h <= r; ++h) {
    Rational term = Rational(binomial(r, h)) * m[k + h];
    out += (h % 2 == 0) ? term : Rational(-term);
  }
  return out;
}

struct HausdorffReport {
  bool pass = true;
  /// Lexicographically first (r,k) violating the condition; (0,0) flags m_0 != 1.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  Rational value;  // the offending (-1)^r Delta^r m_k, or m_0
};

/// m_0 = 1 and (-1)^r Delta^r m_k >= 0 for all r + k <= K.
inline HausdorffReport check_hausdorff(const MomentSequence& m) {
  HausdorffReport rep;
  if (m[0] != 1) {
    rep.pass = false;
    rep.violation = std::make_pair(std::size_t{0}, std::size_t{0});
    rep.value = m[0];
    return rep;
  }
  DeltaTable t(m);
  for (std::size_t r = 0; r <= t.order(); ++r)
    for (std::size_t k = 0; r + k <= t.order(); ++k) {
      Rational v = (r % 2 == 0) ? t.at(r, k) : Rational(-t.at(r, k));
      if (v < 0) {
        rep.pass = false;
        rep.violation = std::make_pair(r, k);
        rep.value = v;
        return rep;
      }
    }
  return rep;
}

/// Grid points of a measure whose atom names are rational literals in [0,1].
inline std::vector<Rational> grid_points(const DiscreteMeasure& mu) {
  std::vector<Rational> pts;
  for (const auto& a : mu.atoms()) {
    Rational x = parse_rational(a);
    if (!in_unit_interval(x)) throw input_error("grid point " + a + " outside [0,1]");
    pts.push_back(x);
  }
  return pts;
}

/// m_k = sum_i x_i^k mu(x_i), k = 0..K.
inline MomentSequence moments_of_measure(const DiscreteMeasure& mu, std::size_t K) {
  auto pts = grid_points(mu);
  std::vector<Rational> m(K + 1, Rational(0));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Rational p(1);
    for (std::size_t k = 0; k <= K; ++k) {
      m[k] += p * mu.weights()[i];
      p *= pts[i];
    }
  }
  return MomentSequence(std::move(m));
}

/// Measure on {j/N} named by canonical rational literals.
inline std::vector<std::string> grid_atoms(std::size_t N) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j <= N; ++j) names.push_back(make_rational(static_cast<long>(j), static_cast<long>(N)).get_str());
  return names;
}

/// Masses C(N,j) (-1)^{N-j} Delta^{N-j} m_j on {j/N}.
inline DiscreteMeasure hausdorff_reconstruct(const MomentSequence& m, std::size_t N) {
  if (N < 1) throw input_error("reconstruction needs N >= 1");
  if (N + 1 > m.size()) throw input_error("reconstruction at N needs moments m_0..m_N");
  auto rep = check_hausdorff(m);
  if (!rep.pass) throw input_error("moment sequence fails the Hausdorff condition");
  DeltaTable t(m);
  std::vector<Rational> w;
  for (std::size_t j = 0; j <= N; ++j) {
    std::size_t r = N - j;
    Rational d = (r % 2 == 0) ? t.at(r, j) : Rational(-t.at(r, j));
    w.push_back(Rational(binomial(N, j)) * d);
  }
  return DiscreteMeasure(grid_atoms(N), std::move(w));
}

inline constexpr std::size_t kMaxFitOrder = 6;
inline constexpr std::size_t kMaxFitGrid = 64;

struct MomentFit {
  bool feasible = false;
  std::optional<DiscreteMeasure> measure;
  std::vector<Rational> certificate;  // Farkas vector over rows k = 0..K and the mass row
};

/// Nonnegative weights on {j/N} matching m_0..m_K exactly, or a certificate
/// that none exist on that grid.
inline MomentFit moment_fit_lp(const MomentSequence& m, std::size_t N) {
  if (m.order() > kMaxFitOrder) throw input_error("moment_fit_lp supports K <= 6");
  if (N < 1 || N > kMaxFitGrid) throw input_error("moment_fit_lp supports 1 <= N <= 64");
  // Rows k = 0..K match the moments; the last row pins total mass to 1.
  Matrix A(m.size() + 1, std::vector<Rational>(N + 1, Rational(1)));
  for (std::size_t j = 0; j <= N; ++j) {
    Rational x = make_rational(static_cast<long>(j), static_cast<long>(N));
    Rational p(1);
    for (std::size_t k = 0; k < m.size(); ++k) {
      A[k][j] = p;
      p *= x;
    }
  }
  std::vector<Rational> rhs = m.values();
  rhs.emplace_back(1);
  auto res = solve_feasibility(A, rhs);
  MomentFit fit;
  fit.feasible = res.feasible;
  if (res.feasible) {
    fit.measure = DiscreteMeasure(grid_atoms(N), res.x);
  } else {
    fit.certificate = res.certificate;
  }
  return fit;
}

}  // namespace mvp
