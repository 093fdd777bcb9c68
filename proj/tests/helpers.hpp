#pragma once

// Shared fixtures for the test suite: small named algebras, seeded random
// generators for nilpotent/solvable brackets, and independent oracles the
// production formulas are checked against.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "sols/algebra.hpp"
#include "sols/bracket.hpp"
#include "sols/curvature.hpp"
#include "sols/linalg.hpp"
#include "sols/moment.hpp"

namespace tst {

using sols::Bracket;
using sols::Mat;
using sols::Splitting;
using sols::Vec;

// ---------------------------------------------------------------- algebras

inline Bracket h3() {
  Bracket mu(3);
  mu.set(0, 1, 2, 1.0);
  return mu;
}

inline Bracket abelian(int n) { return Bracket(n); }

/// [A,X1]=X1, [A,X2]=lambda X2 on abelian R^2.
inline Bracket r3Lambda(double lambda) {
  Bracket mu(3);
  mu.set(0, 1, 1, 1.0);
  mu.set(0, 2, 2, lambda);
  return mu;
}

/// so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2.  Not solvable.
inline Bracket so3() {
  Bracket mu(3);
  mu.set(0, 1, 2, 1.0);
  mu.set(1, 2, 0, 1.0);
  mu.set(2, 0, 1, 1.0);
  return mu;
}

/// Heisenberg with an extra central direction.
inline Bracket h3PlusLine() {
  Bracket mu(4);
  mu.set(0, 1, 2, 1.0);
  return mu;
}

/// Filiform chain [e1,e_i] = e_{i+1}, i = 2..n-1.
inline Bracket filiform(int n) {
  Bracket mu(n);
  for (int i = 1; i + 1 < n; ++i) mu.set(0, i, i + 1, 1.0);
  return mu;
}

/// Heisenberg of dimension 5: [e1,e2]=e5, [e3,e4]=e5.
inline Bracket heis5() {
  Bracket mu(5);
  mu.set(0, 1, 4, 1.0);
  mu.set(2, 3, 4, 1.0);
  return mu;
}

/// Free two-step algebra on three generators, dimension 6.
inline Bracket free2step() {
  Bracket mu(6);
  mu.set(0, 1, 3, 1.0);
  mu.set(0, 2, 4, 1.0);
  mu.set(1, 2, 5, 1.0);
  return mu;
}

inline Bracket h3PlusH3() {
  Bracket mu(6);
  mu.set(0, 1, 2, 1.0);
  mu.set(3, 4, 5, 1.0);
  return mu;
}

// ------------------------------------------------------------------ random

inline Mat randGauss(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

inline Mat randOrthogonal(std::mt19937_64& rng, int n) {
  const Mat a = randGauss(rng, n, n);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  return q;
}

/// Invertible with condition kept moderate by rejection on |det|.
inline Mat randGL(std::mt19937_64& rng, int n) {
  for (;;) {
    Mat g = Mat::Identity(n, n) + 0.6 * randGauss(rng, n, n);
    if (std::abs(g.determinant()) >= 0.2) return g;
  }
}

inline Mat randSymmetric(std::mt19937_64& rng, int n) { return sols::sym(randGauss(rng, n, n)); }

/// Random antisymmetric tensor of unit V-norm (not a Lie bracket in general).
inline Bracket randTensor(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Bracket mu(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) mu.set(i, j, k, g(rng));
  mu *= 1.0 / mu.norm();
  return mu;
}

/// Random nilpotent bracket: a seed algebra of the requested dimension moved
/// by a random invertible map, which preserves Jacobi and nilpotency.
inline Bracket randomNilpotent(std::mt19937_64& rng, int dim) {
  Bracket seed(0);
  switch (dim) {
    case 3: seed = h3(); break;
    case 4: seed = (rng() % 2) ? h3PlusLine() : filiform(4); break;
    case 5: seed = (rng() % 2) ? heis5() : filiform(5); break;
    case 6: {
      const auto pick = rng() % 3;
      seed = pick == 0 ? free2step() : pick == 1 ? h3PlusH3() : filiform(6);
      break;
    }
    default: seed = Bracket(dim); break;
  }
  return act(randGL(rng, dim), seed);
}

/// Random solvable bracket with a frame-aligned splitting: a non-nilpotently
/// acting derivation of a random nilpotent base mounted as [A, X] = D X,
/// then rotated block-orthogonally so the splitting stays frame-aligned.
inline std::pair<Bracket, Splitting> randomSolvableAligned(std::mt19937_64& rng) {
  const int m = 2 + static_cast<int>(rng() % 3);  // base dimension 2..4
  for (;;) {
    Bracket base = (m == 2) ? Bracket(2) : randomNilpotent(rng, m);
    const std::vector<Mat> ders = sols::derivationBasis(base, 1e-9);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat d = Mat::Zero(m, m);
    for (const Mat& e : ders) d += g(rng) * e;
    if (d.norm() < 0.3 || sols::isNilpotentMatrix(d, 1e-9)) continue;

    const int n = m + 1;
    Bracket mu(n);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = 0; k < m; ++k) mu.set(i + 1, j + 1, k + 1, base.coeff(i, j, k));
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) mu.set(0, j + 1, k + 1, d(k, j));

    Mat q = Mat::Identity(n, n);
    q.bottomRightCorner(m, m) = randOrthogonal(rng, m);
    Splitting sp;
    sp.aIdx = {0};
    for (int i = 1; i < n; ++i) sp.nIdx.push_back(i);
    return {act(q.transpose(), mu), sp};
  }
}

// ----------------------------------------------------------------- oracles

/// Quadratic-form route to the anonymous curvature operator: the form
/// q(X) = -1/2 sum <mu(X,e_i),e_j>^2 + 1/4 sum <mu(e_i,e_j),X>^2,
/// polarized into a matrix.  Production code uses the closed matrix form.
inline Mat curvatureQuadraticOracle(const Bracket& mu) {
  const int n = mu.dim();
  auto q = [&](const Vec& x) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < n; ++i) {
      const Vec mi = mu.apply(x, Vec::Unit(n, i));
      a += mi.squaredNorm();
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vec mij = mu.apply(Vec::Unit(n, i), Vec::Unit(n, j));
        b += std::pow(mij.dot(x), 2);
      }
    return -0.5 * a + 0.25 * b;
  };
  Mat r(n, n);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = q(Vec::Unit(n, i));
  for (int i = 0; i < n; ++i) {
    r(i, i) = diag[i];
    for (int j = i + 1; j < n; ++j) {
      const double qs = q(Vec::Unit(n, i) + Vec::Unit(n, j));
      r(i, j) = r(j, i) = 0.5 * (qs - diag[i] - diag[j]);
    }
  }
  return r;
}

/// Central finite differences of F along every coordinate plane direction,
/// evaluated through the sphere normalization.  Compares against the
/// analytic tangential gradient in the V inner product.
inline double gradientFdMaxRelErr(const Bracket& mu0, double step) {
  Bracket mu = mu0;
  mu *= 1.0 / mu.norm();
  const Bracket grad = sols::fGradientSphere(mu);
  const double scale = std::max(1.0, grad.norm());
  const int n = mu.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Bracket dir(n);
        dir.set(i, j, k, 1.0);
        dir *= 1.0 / dir.norm();  // unit V-norm direction
        Bracket p = mu + step * dir;
        p *= 1.0 / p.norm();
        Bracket m = mu - step * dir;
        m *= 1.0 / m.norm();
        const double fd = (sols::fValue(p) - sols::fValue(m)) / (2.0 * step);
        const double an = sols::innerV(grad, dir);
        worst = std::max(worst, std::abs(fd - an) / scale);
      }
  return worst;
}

/// Exact-in-structure oracle for the minimum-norm point of a convex hull:
/// enumerate faces, project the origin onto each affine hull, keep feasible
/// projections, return the best squared norm.
inline double faceMinNormSq(const std::vector<Eigen::VectorXi>& verts) {
  const int nv = static_cast<int>(verts.size());
  const int n = static_cast<int>(verts[0].size());
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << nv); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < nv; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    // minimize |V c|^2 subject to 1'c = 1 via the bordered normal equations.
    Mat v(n, k);
    for (int i = 0; i < k; ++i)
      for (int r = 0; r < n; ++r) v(r, i) = verts[idx[i]](r);
    Mat kkt = Mat::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = v.transpose() * v;
    kkt.topRightCorner(k, 1).setOnes();
    kkt.bottomLeftCorner(1, k).setOnes();
    Vec rhs = Vec::Zero(k + 1);
    rhs(k) = 1.0;
    const Vec sol = kkt.fullPivLu().solve(rhs);
    if ((kkt * sol - rhs).norm() > 1e-9) continue;
    bool feasible = true;
    for (int i = 0; i < k; ++i)
      if (sol(i) < -1e-12) feasible = false;
    if (!feasible) continue;
    best = std::min(best, (v * sol.head(k)).squaredNorm());
  }
  return best;
}

/// Brute-force grid minimization over convex coefficients, refined until the
/// effective step is below targetStep.  Convexity makes the local
/// refinement globally valid.
inline double gridMinNormSq(const std::vector<Eigen::VectorXi>& verts, double targetStep) {
  const int nv = static_cast<int>(verts.size());
  const int n = static_cast<int>(verts[0].size());
  Mat v(n, nv);
  for (int i = 0; i < nv; ++i)
    for (int r = 0; r < n; ++r) v(r, i) = verts[i](r);

  Vec center = Vec::Constant(nv, 1.0 / nv);
  double radius = 1.0;
  double best = (v * center).squaredNorm();
  while (radius > targetStep) {
    Vec bestC = center;
    const int steps = 8;
    std::function<void(int, Vec&)> sweep = [&](int axis, Vec& c) {
      if (axis == nv - 1) {
        double rest = 1.0;
        for (int i = 0; i + 1 < nv; ++i) rest -= c(i);
        if (rest < -1e-12) return;
        c(nv - 1) = rest;
        const double val = (v * c).squaredNorm();
        if (val < best) {
          best = val;
          bestC = c;
        }
        return;
      }
      for (int s = 0; s <= steps; ++s) {
        const double lo = std::max(0.0, center(axis) - radius);
        const double hi = std::min(1.0, center(axis) + radius);
        c(axis) = lo + (hi - lo) * s / steps;
        sweep(axis + 1, c);
      }
    };
    Vec c = Vec::Zero(nv);
    sweep(0, c);
    center = bestC;
    radius /= 2.0;
  }
  return best;
}

// ------------------------------------------------------------- comparisons

inline std::vector<double> sortedEigs(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sols::sym(m));
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(v.begin(), v.end());
  return v;
}

inline double eigDistance(const Mat& a, const Mat& b) {
  const auto ea = sortedEigs(a), eb = sortedEigs(b);
  double d = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) d = std::max(d, std::abs(ea[i] - eb[i]));
  return d;
}

}  // namespace tst
