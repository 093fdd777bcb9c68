#pragma once

#include <gmpxx.h>

#include <vector>

#include "sols/bracket.hpp"

namespace sols::exact {

using Rat = mpq_class;

/// Exact value of an IEEE double (every finite double is rational).
inline Rat fromDouble(double v) { return Rat(v); }

/// Dense rational matrix; just enough for rank, nullspace, charpoly and
/// small linear solves.
class RMat {
public:
  RMat() : m_r(0), m_c(0) {}
  RMat(int r, int c) : m_r(r), m_c(c), m_a(static_cast<std::size_t>(r) * c, Rat(0)) {}

  static RMat identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static RMat fromMat(const Mat& a) {
    RMat m(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = fromDouble(a(i, j));
    return m;
  }

  int rows() const { return m_r; }
  int cols() const { return m_c; }

  Rat& at(int i, int j) { return m_a[static_cast<std::size_t>(i) * m_c + j]; }
  const Rat& at(int i, int j) const { return m_a[static_cast<std::size_t>(i) * m_c + j]; }

  bool isZero() const {
    for (const Rat& v : m_a)
      if (v != 0) return false;
    return true;
  }

  Rat trace() const {
    Rat t = 0;
    for (int i = 0; i < std::min(m_r, m_c); ++i) t += at(i, i);
    return t;
  }

  RMat operator*(const RMat& o) const {
    RMat out(m_r, o.m_c);
    for (int i = 0; i < m_r; ++i)
      for (int k = 0; k < m_c; ++k) {
        if (at(i, k) == 0) continue;
        for (int j = 0; j < o.m_c; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
      }
    return out;
  }

  RMat operator+(const RMat& o) const {
    RMat out = *this;
    for (std::size_t t = 0; t < m_a.size(); ++t) out.m_a[t] += o.m_a[t];
    return out;
  }

  RMat operator-(const RMat& o) const {
    RMat out = *this;
    for (std::size_t t = 0; t < m_a.size(); ++t) out.m_a[t] -= o.m_a[t];
    return out;
  }

  RMat scaled(const Rat& s) const {
    RMat out = *this;
    for (Rat& v : out.m_a) v *= s;
    return out;
  }

  Mat toMat() const {
    Mat out(m_r, m_c);
    for (int i = 0; i < m_r; ++i)
      for (int j = 0; j < m_c; ++j) out(i, j) = at(i, j).get_d();
    return out;
  }

private:
  int m_r, m_c;
  std::vector<Rat> m_a;
};

/// Row echelon rank by exact Gaussian elimination.
inline int rank(RMat a) {
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
    for (int i = r + 1; i < a.rows(); ++i) {
      if (a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c) / a.at(r, c);
      for (int j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
    }
    ++r;
  }
  return r;
}

/// Basis of ker(a) via reduced row echelon form; one vector per free column.
inline std::vector<std::vector<Rat>> nullspaceBasis(RMat a) {
  const int n = a.cols();
  std::vector<int> pivotCol;
  int r = 0;
  for (int c = 0; c < n && r < a.rows(); ++c) {
    int p = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(r, j));
    const Rat piv = a.at(r, c);
    for (int j = 0; j < n; ++j) a.at(r, j) /= piv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c);
      for (int j = 0; j < n; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivotCol.push_back(c);
    ++r;
  }
  std::vector<std::vector<Rat>> basis;
  std::vector<bool> isPivot(n, false);
  for (int c : pivotCol) isPivot[c] = true;
  for (int c = 0; c < n; ++c) {
    if (isPivot[c]) continue;
    std::vector<Rat> v(n, Rat(0));
    v[c] = 1;
    for (int i = 0; i < static_cast<int>(pivotCol.size()); ++i) v[pivotCol[i]] = -a.at(i, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves a x = b exactly; returns false when a is singular.
inline bool solveLinear(RMat a, std::vector<Rat> b, std::vector<Rat>& x) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) return false;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (a.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return false;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
      std::swap(b[p], b[c]);
    }
    for (int i = c + 1; i < n; ++i) {
      if (a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c) / a.at(c, c);
      for (int j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
      b[i] -= f * b[c];
    }
  }
  x.assign(n, Rat(0));
  for (int i = n - 1; i >= 0; --i) {
    Rat s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
    x[i] = s / a.at(i, i);
  }
  return true;
}

// ---- polynomials (coefficients ascending, trimmed) ----

using Poly = std::vector<Rat>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly derivative(const Poly& p) {
  Poly d;
  for (int i = 1; i < static_cast<int>(p.size()); ++i) d.push_back(Rat(i) * p[i]);
  trim(d);
  return d;
}

/// Euclidean division; both quotient and remainder exact.
inline void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(std::max<std::size_t>(a.size(), 1), Rat(0));
  const int db = degree(b);
  while (degree(r) >= db && !r.empty()) {
    const int k = degree(r) - db;
    const Rat f = r.back() / b.back();
    q[k] = f;
    for (int i = 0; i <= db; ++i) r[k + i] -= f * b[i];
    trim(r);
  }
  trim(q);
}

inline Poly pgcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rat lead = a.back();
    for (Rat& c : a) c /= lead;
  }
  return a;
}

/// Characteristic polynomial of a square matrix (Faddeev-LeVerrier),
/// monic, det(xI - a).
inline Poly charpoly(const RMat& a) {
  const int n = a.rows();
  Poly p(n + 1, Rat(0));
  p[n] = 1;
  RMat nmat = RMat::identity(n);
  for (int k = 1; k <= n; ++k) {
    RMat m = a * nmat;
    const Rat c = -m.trace() / k;
    p[n - k] = c;
    nmat = m + RMat::identity(n).scaled(c);
  }
  return p;
}

inline RMat evalPoly(const Poly& p, const RMat& m) {
  const int n = m.rows();
  RMat acc(n, n);
  for (int i = degree(p); i >= 0; --i) {
    acc = acc * m;
    acc = acc + RMat::identity(n).scaled(p[i]);
  }
  return acc;
}

/// A matrix is diagonalizable over C iff its squarefree characteristic
/// radical annihilates it.
inline bool diagonalizableOverC(const RMat& m) {
  const Poly p = charpoly(m);
  const Poly g = pgcd(p, derivative(p));
  if (degree(g) <= 0) return true;
  Poly s, r;
  divmod(p, g, s, r);
  return evalPoly(s, m).isZero();
}

inline bool nilpotentMatrix(const RMat& m) {
  RMat p = m;
  for (int k = 1; k < m.rows(); ++k) p = p * m;
  if (m.rows() <= 1) p = m;
  return p.isZero();
}

// ---- exact structure tensors ----

struct RBracket {
  int n = 0;
  std::vector<Rat> c;  // same (i,j,k) layout as Bracket

  static RBracket from(const Bracket& mu) {
    RBracket out;
    out.n = mu.dim();
    out.c.resize(static_cast<std::size_t>(out.n) * out.n * out.n);
    for (int i = 0; i < out.n; ++i)
      for (int j = 0; j < out.n; ++j)
        for (int k = 0; k < out.n; ++k) out.at(i, j, k) = fromDouble(mu.coeff(i, j, k));
    return out;
  }

  Rat& at(int i, int j, int k) { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  const Rat& at(int i, int j, int k) const {
    return c[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
};

inline bool jacobiZero(const RBracket& mu) {
  const int n = mu.n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rat s = 0;
          for (int t = 0; t < n; ++t)
            s += mu.at(i, j, t) * mu.at(t, k, l) + mu.at(j, k, t) * mu.at(t, i, l) +
                 mu.at(k, i, t) * mu.at(t, j, l);
          if (s != 0) return false;
        }
  return true;
}

namespace detail {

/// Exact span dimension of a list of rational vectors.
inline int spanRank(const std::vector<std::vector<Rat>>& vs, int n) {
  RMat m(static_cast<int>(vs.size()), n);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = vs[i][j];
  return rank(m);
}

/// mu(x, y) for exact coordinate vectors.
inline std::vector<Rat> applyR(const RBracket& mu, const std::vector<Rat>& x,
                               const std::vector<Rat>& y) {
  std::vector<Rat> v(mu.n, Rat(0));
  for (int i = 0; i < mu.n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < mu.n; ++j) {
      if (y[j] == 0) continue;
      const Rat f = x[i] * y[j];
      for (int k = 0; k < mu.n; ++k) v[k] += f * mu.at(i, j, k);
    }
  }
  return v;
}

/// Row space basis (as vectors) of a list of rational vectors.
inline std::vector<std::vector<Rat>> spanBasis(const std::vector<std::vector<Rat>>& vs, int n) {
  RMat m(static_cast<int>(vs.size()), n);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = vs[i][j];
  // Echelonize, keep nonzero rows.
  int r = 0;
  for (int c = 0; c < n && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(r, j));
    for (int i = r + 1; i < m.rows(); ++i) {
      if (m.at(i, c) == 0) continue;
      const Rat f = m.at(i, c) / m.at(r, c);
      for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  std::vector<std::vector<Rat>> out;
  for (int i = 0; i < r; ++i) {
    std::vector<Rat> v(n);
    for (int j = 0; j < n; ++j) v[j] = m.at(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

inline bool isSolvableExact(const RBracket& mu) {
  const int n = mu.n;
  std::vector<std::vector<Rat>> v;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    v.push_back(std::move(e));
  }
  int dim = n;
  while (dim > 0) {
    std::vector<std::vector<Rat>> prods;
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b)
        prods.push_back(detail::applyR(mu, v[a], v[b]));
    v = detail::spanBasis(prods, n);
    const int nd = static_cast<int>(v.size());
    if (nd == dim) return false;
    dim = nd;
  }
  return true;
}

inline bool isNilpotentExact(const RBracket& mu) {
  const int n = mu.n;
  std::vector<std::vector<Rat>> full;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    full.push_back(e);
  }
  std::vector<std::vector<Rat>> v = full;
  int dim = n;
  while (dim > 0) {
    std::vector<std::vector<Rat>> prods;
    for (const auto& x : full)
      for (const auto& y : v) prods.push_back(detail::applyR(mu, x, y));
    v = detail::spanBasis(prods, n);
    const int nd = static_cast<int>(v.size());
    if (nd == dim) return false;
    dim = nd;
  }
  return true;
}

/// dim ker of the linearized derivation equations, i.e. dim Der(mu),
/// computed without floating point.  Unknown order: d(p,q) at p*n+q.
inline int derivationDim(const RBracket& mu) {
  const int n = mu.n;
  const int pairs = n * (n - 1) / 2;
  RMat l(pairs * n, n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k, ++row) {
        for (int t = 0; t < n; ++t) {
          l.at(row, k * n + t) += mu.at(i, j, t);
          l.at(row, t * n + i) -= mu.at(t, j, k);
          l.at(row, t * n + j) -= mu.at(i, t, k);
        }
      }
  return n * n - rank(l);
}

}  // namespace sols::exact
