#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "sols/linalg.hpp"

namespace sols {

/// Structure tensor of a metric algebra in an orthonormal frame:
/// coeff(i,j,k) = <mu(e_i,e_j), e_k>, antisymmetric in (i,j).
///
/// The frame is implicit; changing the metric means acting on the tensor
/// (see act()) and keeping the frame orthonormal.  Indices are 0-based.
class Bracket {
public:
  explicit Bracket(int n) : m_n(n), m_c(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int dim() const { return m_n; }

  double coeff(int i, int j, int k) const { return m_c[idx(i, j, k)]; }

  /// Writes both orientations; setting a diagonal pair (i == j) to a
  /// nonzero value is a contract violation and is ignored for zero.
  void set(int i, int j, int k, double v) {
    if (i == j) {
      if (v != 0.0) throw PreconditionFailed("bracket: mu(x,x) must vanish");
      return;
    }
    m_c[idx(i, j, k)] = v;
    m_c[idx(j, i, k)] = -v;
  }

  void add(int i, int j, int k, double v) { set(i, j, k, coeff(i, j, k) + v); }

  /// mu(e_i, e_j) as a coordinate vector.
  Vec of(int i, int j) const {
    Vec v(m_n);
    for (int k = 0; k < m_n; ++k) v(k) = coeff(i, j, k);
    return v;
  }

  Vec apply(const Vec& x, const Vec& y) const {
    Vec v = Vec::Zero(m_n);
    for (int i = 0; i < m_n; ++i) {
      if (x(i) == 0.0) continue;
      for (int j = 0; j < m_n; ++j) {
        if (y(j) == 0.0) continue;
        const double c = x(i) * y(j);
        for (int k = 0; k < m_n; ++k) v(k) += c * coeff(i, j, k);
      }
    }
    return v;
  }

  /// Matrix of ad(e_i): column j holds mu(e_i, e_j).
  Mat ad(int i) const {
    Mat m(m_n, m_n);
    for (int j = 0; j < m_n; ++j)
      for (int k = 0; k < m_n; ++k) m(k, j) = coeff(i, j, k);
    return m;
  }

  Mat ad(const Vec& x) const {
    Mat m = Mat::Zero(m_n, m_n);
    for (int i = 0; i < m_n; ++i)
      if (x(i) != 0.0) m += x(i) * ad(i);
    return m;
  }

  /// Squared norm over all ordered pairs: sum_{i,j,k} coeff(i,j,k)^2.
  /// Each geometric bracket value is counted twice.
  double normSq() const {
    double s = 0.0;
    for (double c : m_c) s += c * c;
    return s;
  }

  double norm() const { return std::sqrt(normSq()); }

  bool isZero(double tol = 0.0) const { return normSq() <= tol; }

  Bracket& operator+=(const Bracket& o) {
    for (std::size_t t = 0; t < m_c.size(); ++t) m_c[t] += o.m_c[t];
    return *this;
  }

  Bracket& operator-=(const Bracket& o) {
    for (std::size_t t = 0; t < m_c.size(); ++t) m_c[t] -= o.m_c[t];
    return *this;
  }

  Bracket& operator*=(double s) {
    for (double& c : m_c) c *= s;
    return *this;
  }

  friend Bracket operator+(Bracket a, const Bracket& b) { return a += b; }
  friend Bracket operator-(Bracket a, const Bracket& b) { return a -= b; }
  friend Bracket operator*(double s, Bracket a) { return a *= s; }

  /// Sub-tensor on the given frame indices.  Components of bracket values
  /// outside the selection are dropped; the caller asserts closure.
  Bracket restrict(const std::vector<int>& indices) const {
    const int m = static_cast<int>(indices.size());
    Bracket out(m);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        for (int c = 0; c < m; ++c)
          out.set(a, b, c, coeff(indices[a], indices[b], indices[c]));
    return out;
  }

private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * m_n + j) * m_n + k;
  }

  int m_n;
  std::vector<double> m_c;
};

/// Inner product on tensors, ordered-pair convention (matches normSq).
inline double innerV(const Bracket& a, const Bracket& b) {
  const int n = a.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += a.coeff(i, j, k) * b.coeff(i, j, k);
  return s;
}

/// Basis-change action: act(g, mu)(x, y) = g mu(g^{-1} x, g^{-1} y).
/// Satisfies act(gh) = act(g) act(h); orthogonal g preserves normSq.
inline Bracket act(const Mat& g, const Bracket& mu) {
  const int n = mu.dim();
  const Mat gi = g.inverse();
  Bracket out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec v = g * mu.apply(gi.col(i), gi.col(j));
      for (int k = 0; k < n; ++k) out.set(i, j, k, v(k));
    }
  return out;
}

/// Infinitesimal action: pi(alpha, mu) = d/dt act(exp(t alpha), mu) at 0,
/// i.e. alpha mu(.,.) - mu(alpha., .) - mu(., alpha.).
/// pi(I, mu) = -mu; derivations of mu are exactly ker pi(., mu).
inline Bracket pi(const Mat& alpha, const Bracket& mu) {
  const int n = mu.dim();
  Bracket out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec v = alpha * mu.of(i, j);
      for (int a = 0; a < n; ++a) {
        if (alpha(a, i) != 0.0) v -= alpha(a, i) * mu.of(a, j);
        if (alpha(a, j) != 0.0) v -= alpha(a, j) * mu.of(i, a);
      }
      for (int k = 0; k < n; ++k) out.set(i, j, k, v(k));
    }
  return out;
}

/// Max norm over basis triples of the cyclic sum
/// mu(mu(x,y),z) + mu(mu(y,z),x) + mu(mu(z,x),y).  Zero iff Jacobi holds.
inline double jacobiResidual(const Bracket& mu) {
  const int n = mu.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec s = Vec::Zero(n);
        for (int t = 0; t < n; ++t) {
          if (mu.coeff(i, j, t) != 0.0) s += mu.coeff(i, j, t) * mu.of(t, k);
          if (mu.coeff(j, k, t) != 0.0) s += mu.coeff(j, k, t) * mu.of(t, i);
          if (mu.coeff(k, i, t) != 0.0) s += mu.coeff(k, i, t) * mu.of(t, j);
        }
        worst = std::max(worst, s.norm());
      }
  return worst;
}

inline bool jacobiHolds(const Bracket& mu, double relTol) {
  return jacobiResidual(mu) <= relTol * std::max(1.0, mu.normSq());
}

namespace detail {

inline Mat spanProducts(const Bracket& mu, const Mat& left, const Mat& right,
                        double relTol, double scale = -1.0) {
  const int n = mu.dim();
  Mat cols(n, left.cols() * right.cols());
  int c = 0;
  for (int a = 0; a < left.cols(); ++a)
    for (int b = 0; b < right.cols(); ++b) cols.col(c++) = mu.apply(left.col(a), right.col(b));
  // Rank against the bracket's own scale: products of basis-change noise
  // must read as zero, not as a noise-rank subspace.  An explicit scale
  // (e.g. the norm of a parent bracket the tensor was cut out of) overrides.
  if (scale <= 0.0) scale = std::max(1e-9, mu.norm());
  return colspanOrtho(cols, relTol, scale);
}

}  // namespace detail

/// Dimensions along the derived series, starting at dim and listing each
/// strictly smaller term once; stabilization ends the list.
inline std::vector<int> derivedSeriesDims(const Bracket& mu, double relTol,
                                          double scale = -1.0) {
  Mat v = Mat::Identity(mu.dim(), mu.dim());
  std::vector<int> dims{mu.dim()};
  while (v.cols() > 0) {
    Mat nv = detail::spanProducts(mu, v, v, relTol, scale);
    // Strict decrease guarantees termination even on non-Jacobi input.
    if (nv.cols() >= v.cols()) break;
    dims.push_back(static_cast<int>(nv.cols()));
    v = nv;
  }
  return dims;
}

/// Dimensions along the lower central series (same listing convention).
inline std::vector<int> lowerCentralSeriesDims(const Bracket& mu, double relTol,
                                               double scale = -1.0) {
  const Mat full = Mat::Identity(mu.dim(), mu.dim());
  Mat v = full;
  std::vector<int> dims{mu.dim()};
  while (v.cols() > 0) {
    Mat nv = detail::spanProducts(mu, full, v, relTol, scale);
    if (nv.cols() >= v.cols()) break;
    dims.push_back(static_cast<int>(nv.cols()));
    v = nv;
  }
  return dims;
}

inline bool isSolvable(const Bracket& mu, double relTol, double scale = -1.0) {
  return derivedSeriesDims(mu, relTol, scale).back() == 0;
}

inline bool isNilpotent(const Bracket& mu, double relTol, double scale = -1.0) {
  return lowerCentralSeriesDims(mu, relTol, scale).back() == 0;
}

}  // namespace sols
