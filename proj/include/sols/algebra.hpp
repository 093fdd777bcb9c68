#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sols/bracket.hpp"
#include "sols/rational.hpp"

namespace sols {

/// Derivations of mu as an orthonormal basis (Frobenius inner product) of
/// ker of the linearized action; columns of the nullspace reshaped n x n.
/// Unknown order matches exact::derivationDim: entry (p,q) at p*n+q.
inline std::vector<Mat> derivationBasis(const Bracket& mu, double relTol) {
  const int n = mu.dim();
  const int pairs = n * (n - 1) / 2;
  Mat l = Mat::Zero(pairs * n, n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k, ++row)
        for (int t = 0; t < n; ++t) {
          l(row, k * n + t) += mu.coeff(i, j, t);
          l(row, t * n + i) -= mu.coeff(t, j, k);
          l(row, t * n + j) -= mu.coeff(i, t, k);
        }
  const Mat ker = nullspaceOrtho(l, relTol);
  std::vector<Mat> basis;
  basis.reserve(ker.cols());
  for (int c = 0; c < ker.cols(); ++c) {
    Mat d(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) d(p, q) = ker(p * n + q, c);
    basis.push_back(std::move(d));
  }
  return basis;
}

namespace detail {

inline std::complex<double> frobC(const CMat& a, const CMat& b) {
  return (a.cwiseProduct(b.conjugate())).sum();
}

/// Gram-Schmidt on matrices; drops numerically dependent elements.  A
/// nonnegative scale pins the drop threshold; by default the largest input
/// norm is used, which is only safe when the inputs are not pure noise.
inline std::vector<CMat> orthoFamily(const std::vector<CMat>& in, double relTol,
                                     double scale = -1.0) {
  std::vector<CMat> out;
  if (scale < 0.0)
    for (const CMat& a : in) scale = std::max(scale, a.norm());
  if (scale <= 0.0) return out;
  for (const CMat& a : in) {
    CMat r = a;
    for (int pass = 0; pass < 2; ++pass)
      for (const CMat& q : out) r -= frobC(r, q) * q;
    if (r.norm() > relTol * scale) out.push_back(r / r.norm());
  }
  return out;
}

/// Unitary h with h e_1 = v (v unit).  Householder with phase fix.
inline CMat unitaryFromFirstColumn(const CVec& v) {
  const int d = static_cast<int>(v.size());
  std::complex<double> phase(1.0, 0.0);
  if (std::abs(v(0)) > 1e-14) phase = v(0) / std::abs(v(0));
  CVec u = v;
  u(0) += phase;
  const double un2 = u.squaredNorm();
  CMat p = CMat::Identity(d, d);
  if (un2 > 1e-28) p -= (2.0 / un2) * (u * u.adjoint());
  // p v = -phase e_1 and p is a self-inverse reflection, so p(-phase e_1) = v.
  CMat h = p;
  h.col(0) *= -phase;
  return h;
}

/// Orthonormal span of the derived ideal of span(fam): pairwise commutators
/// closed under bracketing with the family.
inline std::vector<CMat> derivedIdealClosure(const std::vector<CMat>& fam, double tol) {
  std::vector<CMat> seed;
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) seed.push_back(comm(fam[i], fam[j]));
  std::vector<CMat> basis = orthoFamily(seed, tol, 1.0);
  for (;;) {
    std::vector<CMat> grow = basis;
    for (const CMat& f : fam)
      for (const CMat& b : basis) grow.push_back(comm(f, b));
    std::vector<CMat> next = orthoFamily(grow, tol, 1.0);
    if (next.size() == basis.size()) return next;
    basis = std::move(next);
  }
}

/// Common eigenvector of a family spanning a solvable matrix Lie algebra
/// (Lie's theorem, constructive).  The derived ideal acts nilpotently, so
/// its joint kernel is nonzero and family-invariant; on it the family
/// commutes, and a staircase of generalized-eigenspace restrictions
/// (kernels of polynomials in one operator, hence invariant for all the
/// commuting others) shrinks the subspace until every remainder is
/// nilpotent and a joint kernel vector exists.  Subspace dimensions are
/// pinned by algebraic multiplicity; the only thresholded rank decision is
/// the kernel of the ideal action.
inline CVec commonEigenvector(const std::vector<CMat>& fam, double relTol, int /*depth*/) {
  const int d = static_cast<int>(fam.empty() ? 1 : fam[0].rows());
  if (fam.empty()) return CVec::Unit(d, 0);
  const double tol = std::max(relTol, 1e-7);

  CMat e = CMat::Identity(d, d);
  const std::vector<CMat> ideal = derivedIdealClosure(fam, tol);
  if (!ideal.empty()) {
    CMat stacked(static_cast<int>(ideal.size()) * d, d);
    for (std::size_t t = 0; t < ideal.size(); ++t)
      stacked.middleRows(static_cast<int>(t) * d, d) = ideal[t];
    Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rk = 0;
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > tol * std::max(s(0), 1.0)) ++rk;
    if (rk == d)
      throw NotSolvable("derived ideal of the adjoint family has no joint kernel");
    e = svd.matrixV().rightCols(d - rk);
  }

  for (const CMat& f : fam) {
    const int m = static_cast<int>(e.cols());
    if (m == 1) break;
    const CMat g = e.adjoint() * f * e;
    Eigen::ComplexEigenSolver<CMat> es(g, false);
    const CVec lam = es.eigenvalues();
    // Transitive clustering; defective pairs split by sqrt(eps) stay lumped.
    const double ctol = 1e-6 * std::max(1.0, g.norm());
    std::vector<int> group(m, -1);
    int groups = 0;
    for (int i = 0; i < m; ++i) {
      if (group[i] >= 0) continue;
      group[i] = groups++;
      bool changed = true;
      while (changed) {
        changed = false;
        for (int j = i + 1; j < m; ++j) {
          if (group[j] >= 0) continue;
          for (int t = 0; t < m; ++t)
            if (group[t] == group[i] && std::abs(lam(j) - lam(t)) <= ctol) {
              group[j] = group[i];
              changed = true;
              break;
            }
        }
      }
    }
    if (groups == 1) continue;
    // Deterministic pick: the cluster with the smallest mean (real, imag).
    std::vector<std::complex<double>> mean(groups, 0.0);
    std::vector<int> csize(groups, 0);
    for (int i = 0; i < m; ++i) {
      mean[group[i]] += lam(i);
      ++csize[group[i]];
    }
    int best = 0;
    for (int c = 0; c < groups; ++c) {
      mean[c] /= static_cast<double>(csize[c]);
      const auto a = mean[c], b = mean[best];
      if (c > 0 && (a.real() < b.real() - 1e-12 ||
                    (std::abs(a.real() - b.real()) <= 1e-12 && a.imag() < b.imag())))
        best = c;
    }
    // Generalized eigenspace of the cluster: kernel of the factored
    // polynomial, of dimension exactly the algebraic multiplicity.
    CMat p = CMat::Identity(m, m);
    for (int i = 0; i < m; ++i)
      if (group[i] == best)
        p = p * (g - lam(i) * CMat::Identity(m, m)) / std::max(1.0, g.norm());
    Eigen::JacobiSVD<CMat> psvd(p, Eigen::ComputeFullV);
    e = e * psvd.matrixV().rightCols(csize[best]);
  }

  // Single-cluster remainders are nilpotent on the final subspace and
  // commute, so a joint kernel vector exists: take the smallest singular
  // direction, no rank decision involved.
  const int m = static_cast<int>(e.cols());
  CMat stacked(static_cast<int>(fam.size()) * m, m);
  for (std::size_t t = 0; t < fam.size(); ++t) {
    const CMat g = e.adjoint() * fam[t] * e;
    stacked.middleRows(static_cast<int>(t) * m, m) =
        g - (g.trace() / static_cast<double>(m)) * CMat::Identity(m, m);
  }
  Eigen::JacobiSVD<CMat> ksvd(stacked, Eigen::ComputeFullV);
  CVec v = e * ksvd.matrixV().col(m - 1);
  v /= v.norm();
  return v;
}

}  // namespace detail

/// Weight data of the adjoint family after unitary triangularization.
struct AdjointWeights {
  CMat frame;  // unitary; columns are the triangularizing flag frame
  CMat lam;    // lam(t, i): diagonal entry t of ad(e_i) in the flag frame
};

/// Triangularizes all ad(e_i) simultaneously (Lie's theorem, constructive).
/// Requires a solvable bracket.
inline AdjointWeights triangularizeAdjoint(const Bracket& mu, double relTol) {
  const int n = mu.dim();
  if (!isSolvable(mu, relTol)) throw NotSolvable("adjoint triangularization needs a solvable bracket");
  const double scale = std::max(1.0, mu.norm());
  CMat u = CMat::Identity(n, n);
  for (int t = 0; t + 1 < n; ++t) {
    std::vector<CMat> blocks;
    blocks.reserve(n);
    for (int i = 0; i < n; ++i) {
      const CMat full = u.adjoint() * mu.ad(i).cast<std::complex<double>>() * u;
      blocks.push_back(full.bottomRightCorner(n - t, n - t) / scale);
    }
    const CVec v = detail::commonEigenvector(blocks, relTol, 0);
    CMat step = CMat::Identity(n, n);
    step.bottomRightCorner(n - t, n - t) = detail::unitaryFromFirstColumn(v);
    u = u * step;
  }
  AdjointWeights out;
  out.frame = u;
  out.lam = CMat(n, n);
  double sub = 0.0;
  for (int i = 0; i < n; ++i) {
    const CMat tri = u.adjoint() * mu.ad(i).cast<std::complex<double>>() * u;
    for (int t = 0; t < n; ++t) out.lam(t, i) = tri(t, t);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < r; ++c) sub = std::max(sub, std::abs(tri(r, c)));
  }
  if (sub > 1e-7 * scale)
    throw NotSolvable("adjoint family did not triangularize in the computed flag");
  return out;
}

/// Nilradical of a solvable bracket with a verification certificate.
struct NilradicalResult {
  Mat basis;       // n x m orthonormal columns spanning the nilradical
  Mat complement;  // n x (n-m) orthonormal columns spanning the complement
  bool certified = false;
  std::string note;
};

/// The nilradical of a solvable algebra is the joint kernel of the weight
/// functionals of the adjoint representation.
inline NilradicalResult nilradical(const Bracket& mu, double relTol) {
  const int n = mu.dim();
  const AdjointWeights w = triangularizeAdjoint(mu, relTol);
  Mat constraints(2 * n, n);
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < n; ++i) {
      constraints(t, i) = w.lam(t, i).real();
      constraints(n + t, i) = w.lam(t, i).imag();
    }
  NilradicalResult out;
  // Weights live on the scale of the bracket; ranking an all-noise
  // constraint matrix against its own largest singular value would turn
  // flag noise into fake weights, so the cutoff is pinned to that scale.
  // The certificate below guards the cutoff either way.
  out.basis = nullspaceOrtho(constraints, std::max(relTol, 1e-7), std::max(1.0, mu.norm()));
  out.complement = orthoComplete(out.basis).rightCols(n - out.basis.cols());

  // Certificate: ideal, restricted tensor nilpotent, complement directions
  // act non-nilpotently.
  const double scale = std::max(1.0, mu.norm());
  const int m = static_cast<int>(out.basis.cols());
  out.certified = true;
  for (int i = 0; i < n && out.certified; ++i)
    for (int b = 0; b < m; ++b) {
      const Vec v = mu.apply(Vec::Unit(n, i), out.basis.col(b));
      const Vec res = v - out.basis * (out.basis.transpose() * v);
      if (res.norm() > 1e-7 * scale) {
        out.certified = false;
        out.note = "candidate nilradical is not an ideal";
        break;
      }
    }
  if (out.certified && m > 0) {
    // Restrict the tensor to the candidate and test nilpotency of the
    // restricted algebra through its lower central series.  Rank decisions
    // are floored at the parent scale so that basis noise never reads as
    // structure (an all-noise restriction of an abelian nilradical would
    // otherwise fail its own scale-invariant test).
    const Mat q = orthoComplete(out.basis);
    Bracket rot = act(q.transpose(), mu);
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    const Bracket sub = rot.restrict(idx);
    if (!isNilpotent(sub, std::max(relTol, 1e-7), scale)) {
      out.certified = false;
      out.note = "candidate nilradical is not nilpotent";
    }
  }
  if (out.certified)
    for (int c = 0; c < out.complement.cols(); ++c) {
      const Mat adc = mu.ad(out.complement.col(c));
      if (isNilpotentMatrix(adc, 1e-9)) {
        out.certified = false;
        out.note = "complement direction acts nilpotently";
        break;
      }
    }
  if (!out.certified && out.note.empty()) out.note = "unverified";
  return out;
}

/// Frame-index splitting: nIdx spans the nilradical, aIdx its orthogonal
/// complement.  Only meaningful when the nilradical is frame-aligned.
struct Splitting {
  std::vector<int> aIdx;
  std::vector<int> nIdx;
};

/// Splitting read off the frame when the nilradical projector is a 0/1
/// diagonal to tolerance; nullopt otherwise.
inline std::optional<Splitting> trySplittingIndices(const Bracket& mu, double relTol) {
  const NilradicalResult nr = nilradical(mu, relTol);
  if (!nr.certified) return std::nullopt;
  const Mat proj = nr.basis * nr.basis.transpose();
  Splitting s;
  const int n = mu.dim();
  for (int i = 0; i < n; ++i) {
    const double p = proj(i, i);
    Mat offRow = proj.row(i);
    offRow(0, i) = 0.0;
    if (offRow.norm() > 1e-7) return std::nullopt;
    if (std::abs(p - 1.0) <= 1e-7)
      s.nIdx.push_back(i);
    else if (std::abs(p) <= 1e-7)
      s.aIdx.push_back(i);
    else
      return std::nullopt;
  }
  return s;
}

/// Rotated presentation with the nilradical spanned by the trailing frame
/// vectors; returns the orthogonal change q with aligned = act(q^T, mu).
struct AlignedForm {
  Bracket mu;
  Mat q;
  Splitting split;
};

inline AlignedForm alignedForm(const Bracket& mu, double relTol) {
  const auto direct = trySplittingIndices(mu, relTol);
  if (direct) return {mu, Mat::Identity(mu.dim(), mu.dim()), *direct};
  const NilradicalResult nr = nilradical(mu, relTol);
  if (!nr.certified) throw NotSolvable("nilradical certificate failed: " + nr.note);
  const int n = mu.dim();
  const int m = static_cast<int>(nr.basis.cols());
  Mat q(n, n);
  q.leftCols(n - m) = nr.complement;
  q.rightCols(m) = nr.basis;
  AlignedForm out{act(q.transpose(), mu), q, {}};
  for (int i = 0; i < n - m; ++i) out.split.aIdx.push_back(i);
  for (int i = n - m; i < n; ++i) out.split.nIdx.push_back(i);
  return out;
}

/// Validates that a user-supplied splitting matches the structure: the
/// indices partition the frame, nIdx spans an ideal whose restricted
/// tensor is nilpotent, and every aIdx direction acts non-nilpotently.
inline void checkSplitting(const Bracket& mu, const Splitting& s, double relTol) {
  const int n = mu.dim();
  std::vector<int> seen(n, 0);
  for (int i : s.aIdx) {
    if (i < 0 || i >= n) throw BadSplitting("splitting index out of range");
    ++seen[i];
  }
  for (int i : s.nIdx) {
    if (i < 0 || i >= n) throw BadSplitting("splitting index out of range");
    ++seen[i];
  }
  for (int i = 0; i < n; ++i)
    if (seen[i] != 1) throw BadSplitting("splitting indices must partition the frame");

  const double scale = std::max(1.0, mu.norm());
  std::vector<char> inN(n, 0);
  for (int i : s.nIdx) inN[i] = 1;
  for (int i = 0; i < n; ++i)
    for (int j : s.nIdx)
      for (int k = 0; k < n; ++k)
        if (!inN[k] && std::abs(mu.coeff(i, j, k)) > 1e-9 * scale)
          throw BadSplitting("nIdx does not span an ideal");
  if (!isNilpotent(mu.restrict(s.nIdx), relTol))
    throw BadSplitting("restricted tensor is not nilpotent");
  for (int i : s.aIdx)
    if (isNilpotentMatrix(mu.ad(i), 1e-9))
      throw BadSplitting("aIdx direction acts nilpotently; nIdx is smaller than the nilradical");
}

}  // namespace sols
