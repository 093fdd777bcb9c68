#pragma once

#include <Eigen/Dense>

#include <vector>

#include "sols/rational.hpp"

namespace sols::exact {

struct MinNormResult {
  std::vector<Rat> point;
  Rat normSq = 0;
  std::vector<int> support;  // indices into the vertex list
  Vec pointD;                // double image of point
};

namespace detail {

inline Rat dotRat(const std::vector<Rat>& x, const Eigen::VectorXi& v) {
  Rat s = 0;
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0) s += x[i] * v(i);
  return s;
}

inline bool lexLess(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

}  // namespace detail

/// Minimum-norm point of the convex hull of integer vertices, by Wolfe's
/// algorithm in exact rational arithmetic.  Termination and correctness
/// are exact; ties in the linear minimization break lexicographically.
inline MinNormResult minNormPoint(const std::vector<Eigen::VectorXi>& verts) {
  if (verts.empty()) throw PreconditionFailed("min-norm point of an empty set");
  const int n = static_cast<int>(verts[0].size());
  const int nv = static_cast<int>(verts.size());

  // Start from the shortest vertex (lexicographic tie-break).
  int start = 0;
  long long bestSq = verts[0].squaredNorm();
  for (int i = 1; i < nv; ++i) {
    const long long s = verts[i].squaredNorm();
    if (s < bestSq || (s == bestSq && detail::lexLess(verts[i], verts[start]))) {
      bestSq = s;
      start = i;
    }
  }

  std::vector<int> sup{start};
  std::vector<Rat> lambda{Rat(1)};
  std::vector<Rat> x(n, Rat(0));
  for (int i = 0; i < n; ++i) x[i] = verts[start](i);

  for (int guard = 0; guard < 10000; ++guard) {
    // Linear minimization oracle over all vertices.
    Rat xx = 0;
    for (const Rat& v : x) xx += v * v;
    int best = -1;
    Rat bestVal = 0;
    for (int i = 0; i < nv; ++i) {
      const Rat val = detail::dotRat(x, verts[i]);
      if (best < 0 || val < bestVal ||
          (val == bestVal && detail::lexLess(verts[i], verts[best]))) {
        best = i;
        bestVal = val;
      }
    }
    if (bestVal >= xx) break;  // optimality: <x, v> >= <x, x> for all v

    sup.push_back(best);
    lambda.push_back(Rat(0));

    // Minor cycle: pull x to the affine minimizer, dropping vertices that
    // hit the boundary.  The newly added vertex always keeps a positive
    // coefficient in the first solve, so progress is strict.
    while (true) {
      const int k = static_cast<int>(sup.size());
      RMat kkt(k + 1, k + 1);
      std::vector<Rat> rhs(k + 1, Rat(0));
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          Rat g = 0;
          for (int t = 0; t < n; ++t)
            g += Rat(verts[sup[a]](t)) * Rat(verts[sup[b]](t));
          kkt.at(a, b) = g;
        }
        kkt.at(a, k) = 1;
        kkt.at(k, a) = 1;
      }
      rhs[k] = 1;
      std::vector<Rat> sol;
      if (!solveLinear(kkt, rhs, sol))
        throw PreconditionFailed("affine dependence in the corral");
      std::vector<Rat> alpha(sol.begin(), sol.begin() + k);

      bool interior = true;
      for (const Rat& a : alpha)
        if (a <= 0) {
          interior = false;
          break;
        }
      if (interior) {
        lambda = alpha;
        break;
      }
      // Largest feasible step from lambda toward alpha.
      Rat theta = 1;
      for (int a = 0; a < k; ++a)
        if (alpha[a] <= 0) {
          const Rat t = lambda[a] / (lambda[a] - alpha[a]);
          if (t < theta) theta = t;
        }
      std::vector<int> nsup;
      std::vector<Rat> nlam;
      for (int a = 0; a < k; ++a) {
        const Rat l = (1 - theta) * lambda[a] + theta * alpha[a];
        if (l > 0) {
          nsup.push_back(sup[a]);
          nlam.push_back(l);
        }
      }
      sup = std::move(nsup);
      lambda = std::move(nlam);
    }
    for (int i = 0; i < n; ++i) {
      x[i] = 0;
      for (std::size_t a = 0; a < sup.size(); ++a) x[i] += lambda[a] * verts[sup[a]](i);
    }
  }

  MinNormResult out;
  out.point = x;
  for (const Rat& v : x) out.normSq += v * v;
  out.support = sup;
  std::sort(out.support.begin(), out.support.end());
  out.pointD = Vec(n);
  for (int i = 0; i < n; ++i) out.pointD(i) = x[i].get_d();
  return out;
}

}  // namespace sols::exact
