#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sols/soliton.hpp"

namespace sols {

/// Scale-free isometry invariants of a solvable metric algebra.  The
/// presentation is normalized first (nilradical-aligned frame, complement
/// action symmetrized when admissible), since the curvature ratio is
/// presentation-dependent: isometric algebras can differ by a transposed
/// complement action until symmetrized.
struct InvariantVector {
  int dim = 0;
  std::vector<int> derivedDims;
  int nilradicalDim = 0;
  std::vector<double> ricNormalized;  // sorted eigenvalues of Ric / |scal|
  double curvatureRatio = 0.0;        // |R|^2 / scal^2, 0 for flat
};

inline InvariantVector isometryInvariants(const Bracket& mu, const Config& cfg) {
  if (!isSolvable(mu, cfg.tolRank)) throw NotSolvable("invariants need a solvable bracket");
  InvariantVector inv;
  inv.dim = mu.dim();
  inv.derivedDims = derivedSeriesDims(mu, cfg.tolRank);

  AlignedForm aligned = alignedForm(mu, cfg.tolRank);
  inv.nilradicalDim = static_cast<int>(aligned.split.nIdx.size());

  Bracket work = aligned.mu;
  // Symmetrize when the complement is abelian and acts normally; this is
  // exactly the isometric normalization admissible for such presentations.
  bool admissible = true;
  const double scale = std::max(1.0, work.norm());
  for (std::size_t r = 0; r < aligned.split.aIdx.size() && admissible; ++r) {
    for (std::size_t q = r + 1; q < aligned.split.aIdx.size(); ++q)
      if (work.of(aligned.split.aIdx[r], aligned.split.aIdx[q]).norm() > 1e-7 * scale)
        admissible = false;
    const Mat ad = work.ad(aligned.split.aIdx[r]);
    if (comm(ad, ad.transpose()).norm() > 1e-7 * std::max(1.0, ad.squaredNorm()))
      admissible = false;
  }
  if (admissible && !aligned.split.aIdx.empty())
    work = symmetrizeComplementAction(work, aligned.split, cfg);

  const Mat ric = ricci(work);
  const double scal = ric.trace();
  const double flatGate = cfg.tolResidual * std::max(1.0, work.normSq());
  if (ric.norm() <= flatGate) {
    inv.ricNormalized.assign(mu.dim(), 0.0);
    inv.curvatureRatio = 0.0;
    return inv;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(ric);
  const double denom = std::max(std::abs(scal), flatGate);
  for (int i = 0; i < mu.dim(); ++i) inv.ricNormalized.push_back(es.eigenvalues()(i) / denom);
  std::sort(inv.ricNormalized.begin(), inv.ricNormalized.end());
  inv.curvatureRatio = curvatureOperator(work).squaredNorm() / (denom * denom);
  return inv;
}

inline bool invariantsMatch(const InvariantVector& a, const InvariantVector& b, double tol) {
  if (a.dim != b.dim || a.nilradicalDim != b.nilradicalDim) return false;
  if (a.derivedDims != b.derivedDims) return false;
  for (std::size_t i = 0; i < a.ricNormalized.size(); ++i)
    if (std::abs(a.ricNormalized[i] - b.ricNormalized[i]) > tol) return false;
  return std::abs(a.curvatureRatio - b.curvatureRatio) <= tol;
}

enum class ConjugacyVerdict { Conjugate, NotConjugate, Inconclusive };

inline const char* toString(ConjugacyVerdict v) {
  switch (v) {
    case ConjugacyVerdict::Conjugate: return "Conjugate";
    case ConjugacyVerdict::NotConjugate: return "NotConjugate";
    case ConjugacyVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct ConjugacyReport {
  ConjugacyVerdict verdict = ConjugacyVerdict::Inconclusive;
  Mat witness;  // orthogonal automorphism carrying span a1 to span a2
  std::string reason;
};

namespace detail {

/// Trace-orthonormalizes a family of symmetric matrices (Frobenius inner
/// product); throws DegenerateMetric on dependence.
inline std::vector<Mat> traceOrthonormal(const std::vector<Mat>& fam) {
  const int r = static_cast<int>(fam.size());
  Mat gram(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) gram(i, j) = frob(fam[i], fam[j]);
  Eigen::LLT<Mat> llt(gram);
  if (llt.info() != Eigen::Success)
    throw DegenerateMetric("family is linearly dependent");
  const Mat tinv = Mat(llt.matrixL()).inverse();
  std::vector<Mat> out(r, Mat::Zero(fam[0].rows(), fam[0].cols()));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) out[a] += tinv(a, b) * fam[b];
  return out;
}

inline std::vector<double> sortedEigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(m));
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline bool closeSets(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace detail

/// Decides whether two commuting symmetric families are conjugate by an
/// orthogonal automorphism of the nilpotent base: first cheap invariants
/// (dimension, Casimir spectra), then a finite search over signed
/// permutations between simultaneous eigenbases.  The search is complete
/// only when every joint eigenvalue pattern is simple enough to be covered
/// by signed permutations, so a miss returns Inconclusive, never a refusal.
inline ConjugacyReport conjugacyCheck(const Bracket& nilMu, const std::vector<Mat>& a1,
                                      const std::vector<Mat>& a2, const Config& cfg) {
  ConjugacyReport rep;
  if (a1.size() != a2.size()) {
    rep.verdict = ConjugacyVerdict::NotConjugate;
    rep.reason = "different family dimensions";
    return rep;
  }
  if (a1.empty()) {
    rep.verdict = ConjugacyVerdict::Conjugate;
    rep.witness = Mat::Identity(nilMu.dim(), nilMu.dim());
    return rep;
  }
  const int n = nilMu.dim();
  const std::vector<Mat> f1 = detail::traceOrthonormal(a1);
  const std::vector<Mat> f2 = detail::traceOrthonormal(a2);

  // Conjugation-invariant spectra: the Casimir sum_i Ahat_i^2 does not
  // depend on the chosen trace-orthonormal basis.
  Mat cas1 = Mat::Zero(n, n), cas2 = Mat::Zero(n, n);
  for (const Mat& m : f1) cas1 += m * m;
  for (const Mat& m : f2) cas2 += m * m;
  if (!detail::closeSets(detail::sortedEigenvalues(cas1), detail::sortedEigenvalues(cas2),
                         1e-7)) {
    rep.verdict = ConjugacyVerdict::NotConjugate;
    rep.reason = "Casimir spectra differ";
    return rep;
  }
  if (f1.size() == 1) {
    const auto e1 = detail::sortedEigenvalues(f1[0]);
    auto e2 = detail::sortedEigenvalues(f2[0]);
    std::vector<double> e2neg;
    for (double v : e2) e2neg.push_back(-v);
    std::sort(e2neg.begin(), e2neg.end());
    if (!detail::closeSets(e1, e2, 1e-7) && !detail::closeSets(e1, e2neg, 1e-7)) {
      rep.verdict = ConjugacyVerdict::NotConjugate;
      rep.reason = "generator spectra differ up to sign";
      return rep;
    }
  }

  if (n > 5) {
    rep.reason = "search skipped above dimension 5";
    return rep;
  }

  const Mat p1 = simdiagSymmetric(f1, 1e-9);
  const Mat p2 = simdiagSymmetric(f2, 1e-9);
  const double muScale = std::max(1.0, nilMu.norm());
  const auto perms = allPermutations(n);
  for (const auto& perm : perms) {
    for (int signs = 0; signs < (1 << n); ++signs) {
      Mat sp = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i) sp(perm[i], i) = (signs >> i) & 1 ? -1.0 : 1.0;
      const Mat h = p2 * sp * p1.transpose();
      Bracket moved = act(h, nilMu);
      moved -= nilMu;
      if (moved.norm() > 1e-7 * muScale) continue;
      bool spanOk = true;
      for (const Mat& m : f1) {
        Mat img = h * m * h.transpose();
        for (const Mat& q : f2) img -= frob(img, q) * q;
        if (img.norm() > 1e-7) {
          spanOk = false;
          break;
        }
      }
      if (spanOk) {
        rep.verdict = ConjugacyVerdict::Conjugate;
        rep.witness = h;
        return rep;
      }
    }
  }
  rep.reason = "no signed-permutation witness found";
  return rep;
}

}  // namespace sols
