#pragma once

#include <vector>

#include "sols/config.hpp"
#include "sols/curvature.hpp"

namespace sols {

enum class SolitonVerdict { Einstein, Solsoliton, Flat, NotSoliton };

inline const char* toString(SolitonVerdict v) {
  switch (v) {
    case SolitonVerdict::Einstein: return "Einstein";
    case SolitonVerdict::Solsoliton: return "Solsoliton";
    case SolitonVerdict::Flat: return "Flat";
    case SolitonVerdict::NotSoliton: return "NotSoliton";
  }
  return "?";
}

/// Result of projecting Ric onto span{I} + Der(mu).  The projection is
/// unique for mu != 0 because the identity is never a derivation then
/// (pi(I) mu = -mu).
struct SolitonCertificate {
  SolitonVerdict verdict = SolitonVerdict::NotSoliton;
  double c = 0.0;
  Mat d;
  /// |Ric - cI - D| / max(1, |Ric|).
  double residualRel = 0.0;
  /// |pi(D) mu|, sanity value for the derivation part.
  double derivationResidual = 0.0;
};

/// Decides whether Ric(mu) = c I + D with D a derivation, and extracts the
/// unique (c, D) pair by least squares over span{I} + Der(mu).
inline SolitonCertificate solitonDecompose(const Bracket& mu, const Config& cfg) {
  const int n = mu.dim();
  SolitonCertificate cert;
  cert.d = Mat::Zero(n, n);
  const Mat ric = ricci(mu);
  const double ricScale = std::max(1.0, ric.norm());
  if (ric.norm() <= cfg.tolResidual * std::max(1.0, mu.normSq())) {
    cert.verdict = SolitonVerdict::Flat;
    return cert;
  }

  const std::vector<Mat> ders = derivationBasis(mu, cfg.tolRank);
  const int k = static_cast<int>(ders.size());
  Mat gram(k + 1, k + 1);
  Vec rhs(k + 1);
  gram(0, 0) = static_cast<double>(n);
  rhs(0) = ric.trace();
  for (int a = 0; a < k; ++a) {
    gram(0, a + 1) = ders[a].trace();
    gram(a + 1, 0) = gram(0, a + 1);
    rhs(a + 1) = frob(ric, ders[a]);
    for (int b = 0; b < k; ++b) gram(a + 1, b + 1) = (a == b) ? 1.0 : 0.0;
  }
  const Vec x = gram.fullPivLu().solve(rhs);
  cert.c = x(0);
  for (int a = 0; a < k; ++a) cert.d += x(a + 1) * ders[a];
  cert.residualRel = (ric - cert.c * Mat::Identity(n, n) - cert.d).norm() / ricScale;
  cert.derivationResidual = pi(cert.d, mu).norm();

  if (cert.residualRel <= cfg.tolResidual) {
    const bool einstein = cert.d.norm() <= cfg.tolResidual * ricScale;
    cert.verdict = einstein ? SolitonVerdict::Einstein : SolitonVerdict::Solsoliton;
  } else {
    cert.verdict = SolitonVerdict::NotSoliton;
  }
  return cert;
}

/// Nilpotent metric algebra whose Ricci operator splits as c I + D1.
struct NilsolitonInput {
  Bracket mu;
  double c = 0.0;
  Mat d1;
};

struct ConstructionResult {
  Bracket s;
  Splitting split;
  double cPredicted = 0.0;
  Mat dPredicted;
  bool einsteinPredicted = false;
  /// |Ric(s) - c I - D_pred| / max(1, |Ric(s)|).
  double predictedResidual = 0.0;
  SolitonCertificate cert;

  explicit ConstructionResult(int dim) : s(dim) {}
};

/// Builds the solvable extension of a nilsoliton by a commuting family of
/// symmetric derivations, with the metric fixed by <A,A'> = -tr(A A')/c.
/// The result satisfies Ric = c I + D with D supported on the nilpotent
/// block; validation failures throw typed errors.
inline ConstructionResult constructSolsoliton(const NilsolitonInput& nil,
                                              const std::vector<Mat>& aBasis,
                                              const Config& cfg) {
  const int n = nil.mu.dim();
  const int r = static_cast<int>(aBasis.size());

  if (!isNilpotent(nil.mu, cfg.tolRank))
    throw NotNilsoliton("base tensor is not nilpotent");
  if (!(nil.c < 0.0)) throw NotNilsoliton("soliton constant must be negative");
  const bool abelian = nil.mu.normSq() <= 1e-18;
  if (abelian) {
    if ((nil.d1 + nil.c * Mat::Identity(n, n)).norm() > 1e-9 * std::abs(nil.c))
      throw NotNilsoliton("abelian base requires D1 = -c I");
  } else {
    const Mat ricN = ricci(nil.mu);
    const double res =
        (ricN - nil.c * Mat::Identity(n, n) - nil.d1).norm() / std::max(1.0, ricN.norm());
    if (res > 1e2 * cfg.tolResidual)
      throw NotNilsoliton("Ric of the base does not split as c I + D1");
  }

  for (const Mat& a : aBasis) {
    const double scale = std::max(1.0, a.norm());
    if (a.rows() != n || a.cols() != n)
      throw NotDerivation("derivation block has wrong dimensions");
    if ((a - a.transpose()).norm() > 1e-9 * scale)
      throw NotSymmetric("extension derivations must be symmetric");
    if (pi(a, nil.mu).norm() > 1e-9 * scale * std::max(1.0, nil.mu.norm()))
      throw NotDerivation("extension block is not a derivation of the base");
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (comm(aBasis[i], aBasis[j]).norm() >
          1e-9 * std::max(1.0, aBasis[i].norm() * aBasis[j].norm()))
        throw NotCommuting("extension derivations must commute");

  // Metric on the extension: <A,A'> = -tr(A A')/c, orthonormalized by
  // Cholesky so that tr(Ahat_a Ahat_b) = -c delta_ab.
  Mat gram(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) gram(i, j) = -frob(aBasis[i], aBasis[j]) / nil.c;
  std::vector<Mat> ahat(r, Mat::Zero(n, n));
  if (r > 0) {
    // LLT alone does not reject semidefinite input reliably.
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    if (es.eigenvalues()(0) <= 1e-12 * std::max(1.0, es.eigenvalues()(r - 1)))
      throw DegenerateMetric("extension inner product is not positive definite");
    Eigen::LLT<Mat> llt(gram);
    if (llt.info() != Eigen::Success)
      throw DegenerateMetric("extension inner product is not positive definite");
    const Mat tinv = Mat(llt.matrixL()).inverse();
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) ahat[a] += tinv(a, b) * aBasis[b];
  }

  const int total = r + n;
  ConstructionResult out(total);
  for (int a = 0; a < r; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (ahat[a](k, j) != 0.0) out.s.set(a, r + j, r + k, ahat[a](k, j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (nil.mu.coeff(i, j, k) != 0.0) out.s.set(r + i, r + j, r + k, nil.mu.coeff(i, j, k));
  for (int a = 0; a < r; ++a) out.split.aIdx.push_back(a);
  for (int i = 0; i < n; ++i) out.split.nIdx.push_back(r + i);

  // Predicted decomposition: D vanishes on the extension block and equals
  // D1 - sum_a tr(Ahat_a) Ahat_a on the nilpotent block.
  Mat dn = abelian ? Mat(-nil.c * Mat::Identity(n, n)) : nil.d1;
  for (int a = 0; a < r; ++a) dn -= ahat[a].trace() * ahat[a];
  out.cPredicted = nil.c;
  out.dPredicted = Mat::Zero(total, total);
  out.dPredicted.bottomRightCorner(n, n) = dn;
  out.einsteinPredicted = dn.norm() <= cfg.tolResidual * std::max(1.0, std::abs(nil.c));

  const Mat ricS = ricci(out.s);
  out.predictedResidual =
      (ricS - nil.c * Mat::Identity(total, total) - out.dPredicted).norm() /
      std::max(1.0, ricS.norm());
  out.cert = solitonDecompose(out.s, cfg);
  return out;
}

/// The four structure conditions carved out of a frame-aligned splitting;
/// their conjunction with c < 0 characterizes solsolitons.
struct StructureConditionsReport {
  bool nilsolitonPart = false;   // restricted tensor is a nilsoliton
  bool abelianComplement = false;
  bool normalComplement = false;
  bool innerProductRule = false;  // tr(S_r S_s) = -c delta_rs
  double c = 0.0;
  bool aggregate = false;
  double resNil = 0.0;
  double resAbelian = 0.0;
  double resNormal = 0.0;
  double resInner = 0.0;
};

inline StructureConditionsReport structureConditionsCheck(const Bracket& mu, const Splitting& sp,
                                          const Config& cfg) {
  checkSplitting(mu, sp, cfg.tolRank);
  StructureConditionsReport rep;
  const int m = static_cast<int>(sp.nIdx.size());
  const int ra = static_cast<int>(sp.aIdx.size());
  const double scale = std::max(1.0, mu.norm());

  const Bracket nilBr = mu.restrict(sp.nIdx);
  const bool abelian = nilBr.norm() <= cfg.tolResidual * scale;

  std::vector<Mat> srest(ra);
  for (int r = 0; r < ra; ++r) {
    Mat block(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) block(a, b) = mu.coeff(sp.aIdx[r], sp.nIdx[b], sp.nIdx[a]);
    srest[r] = sym(block);
  }

  if (abelian) {
    rep.nilsolitonPart = true;
    rep.resNil = 0.0;
    double best = 0.0;
    int which = -1;
    for (int r = 0; r < ra; ++r) {
      const double t = frob(srest[r], srest[r]);
      if (t > best) {
        best = t;
        which = r;
      }
    }
    rep.c = which >= 0 ? -best : 0.0;
  } else {
    const SolitonCertificate certN = solitonDecompose(nilBr, cfg);
    rep.resNil = certN.residualRel;
    rep.nilsolitonPart = certN.residualRel <= cfg.tolResidual && certN.c < 0.0;
    rep.c = certN.c;
  }

  for (int r = 0; r < ra; ++r)
    for (int q = r + 1; q < ra; ++q)
      rep.resAbelian = std::max(rep.resAbelian, mu.of(sp.aIdx[r], sp.aIdx[q]).norm() / scale);
  rep.abelianComplement = rep.resAbelian <= cfg.tolResidual;

  for (int r = 0; r < ra; ++r) {
    const Mat ad = mu.ad(sp.aIdx[r]);
    rep.resNormal = std::max(
        rep.resNormal, comm(ad, ad.transpose()).norm() / std::max(1.0, ad.squaredNorm()));
  }
  rep.normalComplement = rep.resNormal <= cfg.tolResidual;

  const double cScale = std::max(1.0, std::abs(rep.c));
  for (int r = 0; r < ra; ++r)
    for (int q = 0; q < ra; ++q) {
      const double want = (r == q) ? -rep.c : 0.0;
      rep.resInner = std::max(rep.resInner, std::abs(frob(srest[r], srest[q]) - want) / cScale);
    }
  rep.innerProductRule = rep.resInner <= cfg.tolResidual;

  rep.aggregate = rep.nilsolitonPart && rep.abelianComplement && rep.normalComplement &&
                  rep.innerProductRule && rep.c < 0.0;
  return rep;
}

/// Replaces the action of each complement direction by its symmetric part
/// and kills the complement-complement brackets.  Preconditions: the
/// complement is abelian and acts by normal operators (both to tolerance);
/// under them the result presents an isometric metric algebra.
inline Bracket symmetrizeComplementAction(const Bracket& mu, const Splitting& sp,
                                          const Config& cfg) {
  checkSplitting(mu, sp, cfg.tolRank);
  const double scale = std::max(1.0, mu.norm());
  for (std::size_t r = 0; r < sp.aIdx.size(); ++r) {
    for (std::size_t q = r + 1; q < sp.aIdx.size(); ++q)
      if (mu.of(sp.aIdx[r], sp.aIdx[q]).norm() > 1e-7 * scale)
        throw PreconditionFailed("complement is not abelian");
    const Mat ad = mu.ad(sp.aIdx[r]);
    if (comm(ad, ad.transpose()).norm() > 1e-7 * std::max(1.0, ad.squaredNorm()))
      throw PreconditionFailed("complement action is not normal");
  }

  const int m = static_cast<int>(sp.nIdx.size());
  Bracket out(mu.dim());
  for (std::size_t r = 0; r < sp.aIdx.size(); ++r) {
    Mat block(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) block(a, b) = mu.coeff(sp.aIdx[r], sp.nIdx[b], sp.nIdx[a]);
    const Mat s = sym(block);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (s(a, b) != 0.0) out.set(sp.aIdx[r], sp.nIdx[b], sp.nIdx[a], s(a, b));
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (mu.coeff(sp.nIdx[i], sp.nIdx[j], sp.nIdx[k]) != 0.0)
          out.set(sp.nIdx[i], sp.nIdx[j], sp.nIdx[k], mu.coeff(sp.nIdx[i], sp.nIdx[j], sp.nIdx[k]));
  return out;
}

/// For each complement direction: is ad A normal, and is (ad A)^T a
/// derivation?  On solsolitons the two answers agree.
struct NormalityPair {
  int frameIndex = 0;
  bool normal = false;
  bool transposeIsDerivation = false;
  double resNormal = 0.0;
  double resDerivation = 0.0;
};

inline std::vector<NormalityPair> normalityEquivCheck(const Bracket& mu, const Splitting& sp,
                                                      const Config& cfg) {
  checkSplitting(mu, sp, cfg.tolRank);
  std::vector<NormalityPair> out;
  for (int idx : sp.aIdx) {
    NormalityPair p;
    p.frameIndex = idx;
    const Mat ad = mu.ad(idx);
    p.resNormal = comm(ad, ad.transpose()).norm() / std::max(1.0, ad.squaredNorm());
    p.resDerivation =
        pi(ad.transpose(), mu).norm() / std::max(1.0, ad.norm() * mu.norm());
    p.normal = p.resNormal <= cfg.tolResidual;
    p.transposeIsDerivation = p.resDerivation <= cfg.tolResidual;
    out.push_back(p);
  }
  return out;
}

/// Sign of the soliton constant: c < 0 unless the metric is flat.
struct CnegReport {
  bool applicable = false;  // decomposition succeeded
  bool holds = false;
  double c = 0.0;
  SolitonVerdict verdict = SolitonVerdict::NotSoliton;
};

inline CnegReport cnegCheck(const Bracket& mu, const Config& cfg) {
  const SolitonCertificate cert = solitonDecompose(mu, cfg);
  CnegReport rep;
  rep.c = cert.c;
  rep.verdict = cert.verdict;
  rep.applicable = cert.verdict != SolitonVerdict::NotSoliton;
  if (!rep.applicable) return rep;
  if (cert.verdict == SolitonVerdict::Flat)
    rep.holds = true;
  else
    rep.holds = cert.c < 0.0;
  return rep;
}

/// Consistency of the decomposition against the trace pairing
/// tr(R E) = 1/4 <pi(E) mu, mu>: substitute R by c I + B/2 + S(ad H) + D
/// and evaluate both routes with E the substituted operator itself.
struct TraceIdentityReport {
  double resOperator = 0.0;   // |R - (cI + B/2 + S(ad H) + D)| / max(1,|R|)
  double resQuadratic = 0.0;  // |tr(E^2) - <pi(E)mu,mu>/4| / max(1,|E|^2)
  bool pass = false;
};

inline TraceIdentityReport traceIdentitiesCheck(const Bracket& mu,
                                                const SolitonCertificate& cert,
                                                const Config& cfg) {
  const int n = mu.dim();
  const Mat r = curvatureOperator(mu);
  const Mat e = cert.c * Mat::Identity(n, n) + 0.5 * killingForm(mu) +
                sym(mu.ad(meanCurvatureVector(mu))) + cert.d;
  TraceIdentityReport rep;
  rep.resOperator = (r - e).norm() / std::max(1.0, r.norm());
  const double lhs = e.squaredNorm();
  const double rhs = 0.25 * innerV(pi(e, mu), mu);
  rep.resQuadratic = std::abs(lhs - rhs) / std::max(1.0, e.squaredNorm());
  rep.pass = rep.resOperator <= 1e2 * cfg.tolResidual && rep.resQuadratic <= 1e2 * cfg.tolResidual;
  return rep;
}

}  // namespace sols
