#pragma once

#include "sols/algebra.hpp"
#include "sols/bracket.hpp"

namespace sols {

/// Self-adjoint part of the curvature built from the bracket alone:
/// R = -1/2 sum_i ad(e_i)^T ad(e_i) + 1/4 sum_i ad(e_i) ad(e_i)^T.
/// Satisfies tr R = -1/4 |mu|^2 and tr(R E) = 1/4 <pi(E)mu, mu>.
inline Mat curvatureOperator(const Bracket& mu) {
  const int n = mu.dim();
  Mat r = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Mat a = mu.ad(i);
    r.noalias() += -0.5 * (a.transpose() * a) + 0.25 * (a * a.transpose());
  }
  return sym(r);
}

/// Killing form matrix B(i,j) = tr(ad e_i ad e_j).
inline Mat killingForm(const Bracket& mu) {
  const int n = mu.dim();
  std::vector<Mat> ads;
  ads.reserve(n);
  for (int i = 0; i < n; ++i) ads.push_back(mu.ad(i));
  Mat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      b(i, j) = (ads[i] * ads[j]).trace();
      b(j, i) = b(i, j);
    }
  return b;
}

/// Mean curvature vector H = sum_i tr(ad e_i) e_i.
inline Vec meanCurvatureVector(const Bracket& mu) {
  const int n = mu.dim();
  Vec h(n);
  for (int i = 0; i < n; ++i) h(i) = mu.ad(i).trace();
  return h;
}

/// Ricci operator Ric = R - 1/2 B - S(ad H).
inline Mat ricci(const Bracket& mu) {
  return curvatureOperator(mu) - 0.5 * killingForm(mu) - sym(mu.ad(meanCurvatureVector(mu)));
}

inline double scalarCurvature(const Bracket& mu) { return ricci(mu).trace(); }

/// Ricci operator assembled block by block from a frame-aligned splitting,
/// using the structure of the nilradical ideal instead of the ad sums.
/// Independent route; must agree with ricci() whenever the splitting is
/// valid.  Throws BadSplitting otherwise.
inline Mat ricciBlockwise(const Bracket& mu, const Splitting& s, double relTol) {
  checkSplitting(mu, s, relTol);
  const int n = mu.dim();
  const int ra = static_cast<int>(s.aIdx.size());
  const int m = static_cast<int>(s.nIdx.size());

  // Restrictions of ad to the nilradical block.
  auto restrictAd = [&](int frameIndex) {
    Mat r(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) r(a, b) = mu.coeff(frameIndex, s.nIdx[b], s.nIdx[a]);
    return r;
  };
  std::vector<Mat> ma(ra), nn(m);
  for (int r = 0; r < ra; ++r) ma[r] = restrictAd(s.aIdx[r]);
  for (int i = 0; i < m; ++i) nn[i] = restrictAd(s.nIdx[i]);
  const Vec h = meanCurvatureVector(mu);

  Mat ric = Mat::Zero(n, n);

  // aa block: -1/2 sum_t <[A_r,A_t],[A_s,A_t]> - tr(S(M_r) S(M_s)).
  for (int r = 0; r < ra; ++r)
    for (int q = r; q < ra; ++q) {
      double v = 0.0;
      for (int t = 0; t < ra; ++t)
        v -= 0.5 * mu.of(s.aIdx[r], s.aIdx[t]).dot(mu.of(s.aIdx[q], s.aIdx[t]));
      v -= frob(sym(ma[r]), sym(ma[q]));
      ric(s.aIdx[r], s.aIdx[q]) = v;
      ric(s.aIdx[q], s.aIdx[r]) = v;
    }

  // an block: -1/2 sum_t <[A_r,A_t],[X_j,A_t]> - 1/2 tr(M_r^T N_j)
  //           - 1/2 <[H,A_r],X_j>.
  for (int r = 0; r < ra; ++r)
    for (int j = 0; j < m; ++j) {
      double v = 0.0;
      for (int t = 0; t < ra; ++t)
        v -= 0.5 * mu.of(s.aIdx[r], s.aIdx[t]).dot(mu.of(s.nIdx[j], s.aIdx[t]));
      v -= 0.5 * frob(ma[r], nn[j]);
      v -= 0.5 * mu.apply(h, Vec::Unit(n, s.aIdx[r]))(s.nIdx[j]);
      ric(s.aIdx[r], s.nIdx[j]) = v;
      ric(s.nIdx[j], s.aIdx[r]) = v;
    }

  // nn block: 1/4 sum_{r,s} <[A_r,A_s],X_i><[A_r,A_s],X_j>
  //           + 1/2 sum_r <[M_r, M_r^T] x_i, x_j>
  //           - 1/2 sum_t <[X_i,X_t],[X_j,X_t]>
  //           + 1/4 sum_{s,t} <[X_s,X_t],X_i><[X_s,X_t],X_j>
  //           - S(ad H) restricted.
  Mat commSum = Mat::Zero(m, m);
  for (int r = 0; r < ra; ++r) commSum += comm(ma[r], ma[r].transpose());
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double v = 0.0;
      for (int r = 0; r < ra; ++r)
        for (int q = 0; q < ra; ++q)
          v += 0.25 * mu.coeff(s.aIdx[r], s.aIdx[q], s.nIdx[i]) *
               mu.coeff(s.aIdx[r], s.aIdx[q], s.nIdx[j]);
      v += 0.5 * commSum(j, i);
      for (int t = 0; t < m; ++t)
        v -= 0.5 * mu.of(s.nIdx[i], s.nIdx[t]).dot(mu.of(s.nIdx[j], s.nIdx[t]));
      for (int p = 0; p < m; ++p)
        for (int t = 0; t < m; ++t)
          v += 0.25 * mu.coeff(s.nIdx[p], s.nIdx[t], s.nIdx[i]) *
               mu.coeff(s.nIdx[p], s.nIdx[t], s.nIdx[j]);
      const double sh = 0.5 * (mu.apply(h, Vec::Unit(n, s.nIdx[i]))(s.nIdx[j]) +
                               mu.apply(h, Vec::Unit(n, s.nIdx[j]))(s.nIdx[i]));
      v -= sh;
      ric(s.nIdx[i], s.nIdx[j]) = v;
      ric(s.nIdx[j], s.nIdx[i]) = v;
    }

  return ric;
}

}  // namespace sols
