#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "sols/errors.hpp"

namespace sols {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline Mat sym(const Mat& a) { return 0.5 * (a + a.transpose()); }

inline Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }
inline CMat comm(const CMat& a, const CMat& b) { return a * b - b * a; }

/// Frobenius pairing tr(a b^T); the inner product used for operator spaces.
inline double frob(const Mat& a, const Mat& b) {
  return (a.cwiseProduct(b)).sum();
}

inline int rankOf(const Mat& a, double relTol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > relTol * s(0)) ++r;
  return r;
}

/// Orthonormal basis of ker(a), as columns.  Empty kernel gives a n x 0
/// matrix.  A matrix that is zero to working precision has full kernel.
/// A nonnegative scale pins the rank cutoff at relTol * max(sigma_max,
/// scale), so an all-noise input reads as the zero map.
inline Mat nullspaceOrtho(const Mat& a, double relTol, double scale = -1.0) {
  const int n = static_cast<int>(a.cols());
  if (a.rows() == 0 || a.norm() == 0.0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > relTol * std::max(s(0), scale)) ++r;
  return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis of the column span, as columns.  A nonnegative scale
/// pins the rank cutoff at relTol * max(sigma_max, scale); by default the
/// cutoff is relative to sigma_max alone, which inflates the rank of a
/// matrix that is pure roundoff noise.
inline Mat colspanOrtho(const Mat& a, double relTol, double scale = -1.0) {
  if (a.cols() == 0 || a.norm() == 0.0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double floor = relTol * std::max(s(0), scale);
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > floor) ++r;
  return svd.matrixU().leftCols(r);
}

/// Extends orthonormal columns to a full orthogonal matrix.
inline Mat orthoComplete(const Mat& cols) {
  const int n = static_cast<int>(cols.rows());
  Mat q = Mat::Identity(n, n);
  if (cols.cols() == 0) return q;
  Eigen::HouseholderQR<Mat> qr(cols);
  q = qr.householderQ();
  // Align the leading block with the input columns (QR may flip signs).
  Mat r = q.transpose() * cols;
  for (int j = 0; j < cols.cols(); ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

/// Nilpotency test for a single matrix: ||a^n|| vanishes relative to
/// ||a||^n.  Power-based rather than spectral, so an exactly nilpotent
/// matrix passes at working precision regardless of Jordan structure.
inline bool isNilpotentMatrix(const Mat& a, double relTol) {
  const int n = static_cast<int>(a.rows());
  const double scale = a.norm();
  if (scale == 0.0) return true;
  Mat p = a / scale;
  for (int k = 1; k < n; ++k) p = p * (a / scale);
  return p.norm() <= relTol * std::max(1.0, static_cast<double>(n));
}

inline double spectralRadius(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::EigenSolver<Mat> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Simultaneous orthogonal diagonalization of commuting symmetric
/// matrices: returns orthogonal q with q^T m q diagonal for every input.
/// Eigenvalue clusters are split one matrix at a time.
inline Mat simdiagSymmetric(const std::vector<Mat>& mats, double relTol) {
  if (mats.empty()) throw PreconditionFailed("simdiag: empty family");
  const int n = static_cast<int>(mats[0].rows());
  Mat q = Mat::Identity(n, n);
  std::vector<std::pair<int, int>> blocks{{0, n}};  // [begin, end)
  for (const Mat& m : mats) {
    const double scale = std::max(1.0, m.norm());
    std::vector<std::pair<int, int>> next;
    for (auto [b, e] : blocks) {
      const int w = e - b;
      if (w == 1) {
        next.emplace_back(b, e);
        continue;
      }
      Mat sub = (q.transpose() * m * q).block(b, b, w, w);
      Eigen::SelfAdjointEigenSolver<Mat> es(sym(sub));
      q.middleCols(b, w) = q.middleCols(b, w) * es.eigenvectors();
      const Vec& ev = es.eigenvalues();  // ascending
      int s = 0;
      for (int i = 1; i <= w; ++i) {
        if (i == w || ev(i) - ev(s) > relTol * scale) {
          next.emplace_back(b + s, b + i);
          s = i;
        }
      }
    }
    blocks = std::move(next);
  }
  return q;
}

/// All permutations of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> allPermutations(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace sols
