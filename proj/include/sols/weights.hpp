#pragma once

#include <array>
#include <optional>

#include "sols/minnorm.hpp"
#include "sols/moment.hpp"
#include "sols/soliton.hpp"

namespace sols {

/// Weight vectors e_k - e_i - e_j of the nonzero structure constants,
/// deduplicated as a set (distinct triples can share a weight vector).
struct WeightSet {
  std::vector<Eigen::VectorXi> alphas;           // deduped, lexicographically sorted
  std::vector<std::array<int, 3>> triples;       // contributing (i<j, k)
};

inline WeightSet weightsPresent(const Bracket& mu, double relEps = 1e-12) {
  const int n = mu.dim();
  double maxc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) maxc = std::max(maxc, std::abs(mu.coeff(i, j, k)));
  const double eps = relEps * std::max(1.0, maxc);
  WeightSet out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (std::abs(mu.coeff(i, j, k)) <= eps) continue;
        out.triples.push_back({i, j, k});
        Eigen::VectorXi a = Eigen::VectorXi::Zero(n);
        a(k) += 1;
        a(i) -= 1;
        a(j) -= 1;
        bool seen = false;
        for (const auto& b : out.alphas)
          if (b == a) {
            seen = true;
            break;
          }
        if (!seen) out.alphas.push_back(std::move(a));
      }
  std::sort(out.alphas.begin(), out.alphas.end(),
            [](const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
              return exact::detail::lexLess(a, b);
            });
  return out;
}

/// Minimum-norm point of the weight hull of a nonzero nilpotent tensor.
/// Every weight has coordinate sum -1, hence so does beta (exactly).
struct BetaResult {
  Vec beta;
  std::vector<exact::Rat> betaExact;
  double normSq = 0.0;
  WeightSet weights;
  std::vector<int> support;
};

inline BetaResult betaMu(const Bracket& mu, const Config& cfg) {
  if (!isNilpotent(mu, cfg.tolRank))
    throw NotNilpotent("stratum labels are defined for nilpotent tensors");
  BetaResult out;
  out.weights = weightsPresent(mu);
  if (out.weights.alphas.empty()) throw ZeroBracket("zero tensor carries no weights");
  exact::MinNormResult mn = exact::minNormPoint(out.weights.alphas);
  out.beta = mn.pointD;
  out.betaExact = mn.point;
  out.normSq = mn.normSq.get_d();
  out.support = mn.support;
  return out;
}

/// Stratum-label identities at a nilpotent tensor.  The gate
/// min_alpha <beta, alpha> = |beta|^2 holds automatically for the computed
/// label; a supplied beta may fail it, which disables the gated checks.
struct StrataReport {
  Vec beta;
  double betaNormSq = 0.0;
  double traceBeta = 0.0;
  bool gateHolds = false;
  double gateValue = 0.0;  // min over present weights of <beta, alpha>

  bool betaShiftPositive = false;  // beta + |beta|^2 I > 0 entrywise
  double minShiftedEntry = 0.0;

  bool boundHolds = false;  // |beta| <= |m(mu)|
  double momentNorm = 0.0;
  bool boundTight = false;           // equality case
  bool tightSpectraMatch = false;    // then spec(m) must equal the beta entries

  bool psdOnDerivations = false;  // gated: tr(E D D^T) form is PSD on Der
  double minFormEigenvalue = 0.0;
  bool orthogonalToDerivations = false;  // gated: tr(diag(beta) D) = 0
  double maxDerivationPairing = 0.0;
  bool deltaNonnegative = false;  // gated: <pi(E) mu, mu> >= 0
  double deltaValue = 0.0;
  double deltaPiResidual = 0.0;  // |pi(E) mu|; zero iff equality case
};

inline StrataReport strataChecks(const Bracket& mu, const std::optional<Vec>& givenBeta,
                                 const Config& cfg) {
  if (!isNilpotent(mu, cfg.tolRank))
    throw NotNilpotent("stratum checks need a nilpotent tensor");
  const int n = mu.dim();
  StrataReport rep;
  WeightSet ws = weightsPresent(mu);
  if (ws.alphas.empty()) throw ZeroBracket("zero tensor carries no weights");

  if (givenBeta) {
    rep.beta = *givenBeta;
  } else {
    rep.beta = betaMu(mu, cfg).beta;
  }
  rep.betaNormSq = rep.beta.squaredNorm();
  rep.traceBeta = rep.beta.sum();

  double minPair = 0.0;
  for (std::size_t t = 0; t < ws.alphas.size(); ++t) {
    const double v = rep.beta.dot(ws.alphas[t].cast<double>());
    if (t == 0 || v < minPair) minPair = v;
  }
  rep.gateValue = minPair;
  rep.gateHolds = std::abs(minPair - rep.betaNormSq) <= 1e-9 * std::max(1.0, rep.betaNormSq);

  rep.minShiftedEntry = (rep.beta.array() + rep.betaNormSq).minCoeff();
  rep.betaShiftPositive = rep.minShiftedEntry > 0.0;

  const Mat m = momentMap(mu);
  rep.momentNorm = m.norm();
  rep.boundHolds = rep.beta.norm() <= rep.momentNorm + 1e-9;
  rep.boundTight = std::abs(rep.beta.norm() - rep.momentNorm) <= 1e-7;
  if (rep.boundTight) {
    std::vector<double> eig(n), bet(n);
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    for (int i = 0; i < n; ++i) {
      eig[i] = es.eigenvalues()(i);
      bet[i] = rep.beta(i);
    }
    std::sort(eig.begin(), eig.end());
    std::sort(bet.begin(), bet.end());
    rep.tightSpectraMatch = true;
    for (int i = 0; i < n; ++i)
      if (std::abs(eig[i] - bet[i]) > 1e-6) rep.tightSpectraMatch = false;
  }

  if (rep.gateHolds) {
    const Mat e = Mat(rep.beta.asDiagonal()) + rep.betaNormSq * Mat::Identity(n, n);
    const std::vector<Mat> ders = derivationBasis(mu, cfg.tolRank);
    const int k = static_cast<int>(ders.size());
    if (k > 0) {
      Mat form(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
          const double v = 0.5 * (frob(e * ders[a], ders[b]) + frob(e * ders[b], ders[a]));
          form(a, b) = v;
          form(b, a) = v;
        }
      Eigen::SelfAdjointEigenSolver<Mat> fes(form);
      rep.minFormEigenvalue = fes.eigenvalues().minCoeff();
    }
    rep.psdOnDerivations = rep.minFormEigenvalue >= -1e-9;

    rep.maxDerivationPairing = 0.0;
    for (const Mat& d : ders)
      rep.maxDerivationPairing =
          std::max(rep.maxDerivationPairing, std::abs(frob(Mat(rep.beta.asDiagonal()), d)));
    rep.orthogonalToDerivations = rep.maxDerivationPairing <= 1e-9 * std::max(1.0, rep.beta.norm());

    rep.deltaValue = innerV(pi(e, mu), mu);
    rep.deltaPiResidual = pi(e, mu).norm();
    rep.deltaNonnegative = rep.deltaValue >= -1e-9 * std::max(1.0, mu.normSq());
  }
  return rep;
}

/// Structural identities tying a soliton certificate to the stratum label
/// of its nilpotent block, evaluated in the eigenframe of the block's
/// moment map.  If the label does not reproduce the moment map there, the
/// identities are still reported against the raw eigenvalues
/// (reportedUngated).
struct ExtrasReport {
  bool framed = false;
  bool reportedUngated = false;
  Mat frame;  // orthogonal change applied to the nilpotent block
  Vec beta;
  double momentMatchRes = 0.0;  // |m(rotated block) - diag(beta)|
  double cIdentityRes = 0.0;    // |c + |mu_n|^2 |beta|^2 / 4| / |c|
  double derivationRes = 0.0;   // |pi(E_beta, rotated full)| / |mu|
  double dIdentityRes = 0.0;    // |S(ad H) + D - (-c/|mu_n|^2) E_beta| rel
};

inline ExtrasReport extrasCheck(const Bracket& mu, const Splitting& sp,
                                const SolitonCertificate& cert, const Config& cfg) {
  if (cert.verdict != SolitonVerdict::Solsoliton && cert.verdict != SolitonVerdict::Einstein)
    throw PreconditionFailed("identities require a soliton certificate");
  if (!(cert.c < 0.0)) throw PreconditionFailed("identities require c < 0");
  checkSplitting(mu, sp, cfg.tolRank);
  const Bracket nilBr = mu.restrict(sp.nIdx);
  if (nilBr.normSq() <= 1e-18)
    throw PreconditionFailed("identities require a nonabelian nilpotent block");

  const int n = mu.dim();
  const int m = static_cast<int>(sp.nIdx.size());
  ExtrasReport rep;

  const Mat mm = momentMap(nilBr);
  Eigen::SelfAdjointEigenSolver<Mat> es(mm);
  const Mat q = es.eigenvectors();
  const Bracket rotated = act(q.transpose(), nilBr);
  const BetaResult br = betaMu(rotated, cfg);
  rep.beta = br.beta;
  rep.frame = q;
  rep.momentMatchRes = (es.eigenvalues() - br.beta).norm();
  rep.framed = rep.momentMatchRes <= 1e-7;
  if (!rep.framed) {
    rep.reportedUngated = true;
    rep.beta = es.eigenvalues();
  }

  // Full-frame rotation: identity on the complement, q on the block.
  Mat g = Mat::Identity(n, n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g(sp.nIdx[a], sp.nIdx[b]) = q(a, b);
  const Bracket full = act(g.transpose(), mu);
  const double b2 = rep.beta.squaredNorm();
  Mat ebeta = Mat::Zero(n, n);
  for (int a = 0; a < m; ++a) ebeta(sp.nIdx[a], sp.nIdx[a]) = rep.beta(a) + b2;

  const double nilSq = nilBr.normSq();
  rep.cIdentityRes = std::abs(cert.c + 0.25 * nilSq * b2) / std::abs(cert.c);
  rep.derivationRes = pi(ebeta, full).norm() / std::max(1.0, full.norm());
  const Mat dRot = g.transpose() * cert.d * g;
  const Mat lhs = sym(full.ad(meanCurvatureVector(full))) + dRot;
  const Mat rhs = (-cert.c / nilSq) * ebeta;
  rep.dIdentityRes = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
  return rep;
}

/// The three nonnegative terms whose sum equals <pi(E_beta) mu, mu> for a
/// frame-aligned splitting with E_beta supported on the nilpotent block.
struct PairingTerms {
  double complementPairs = 0.0;   // sum <P [A_r,A_s], [A_r,A_s]>
  double commutatorTerm = 0.0;    // 2 sum <[diag(beta), M_r], M_r>
  double blockVariation = 0.0;    // <pi(P) mu_n, mu_n>
  double total = 0.0;             // <pi(E_beta) mu, mu>, equals the sum
};

inline PairingTerms pairingTerms(const Bracket& mu, const Splitting& sp, const Vec& betaN,
                              const Config& cfg) {
  checkSplitting(mu, sp, cfg.tolRank);
  const Bracket nilBr = mu.restrict(sp.nIdx);
  const WeightSet ws = weightsPresent(nilBr);
  if (ws.alphas.empty()) throw GateFailed("nilpotent block carries no weights");
  const double b2 = betaN.squaredNorm();
  double minPair = 0.0;
  for (std::size_t t = 0; t < ws.alphas.size(); ++t) {
    const double v = betaN.dot(ws.alphas[t].cast<double>());
    if (t == 0 || v < minPair) minPair = v;
  }
  if (std::abs(minPair - b2) > 1e-9 * std::max(1.0, b2))
    throw GateFailed("label does not satisfy the gate on the nilpotent block");

  const int n = mu.dim();
  const int m = static_cast<int>(sp.nIdx.size());
  const int ra = static_cast<int>(sp.aIdx.size());
  const Mat p = Mat(betaN.asDiagonal()) + b2 * Mat::Identity(m, m);
  const Mat b = Mat(betaN.asDiagonal());

  PairingTerms out;
  for (int r = 0; r < ra; ++r)
    for (int s = 0; s < ra; ++s) {
      Vec w(m);
      const Vec fullw = mu.of(sp.aIdx[r], sp.aIdx[s]);
      for (int a = 0; a < m; ++a) w(a) = fullw(sp.nIdx[a]);
      out.complementPairs += w.dot(p * w);
    }
  for (int r = 0; r < ra; ++r) {
    Mat mr(m, m);
    for (int a = 0; a < m; ++a)
      for (int c = 0; c < m; ++c) mr(a, c) = mu.coeff(sp.aIdx[r], sp.nIdx[c], sp.nIdx[a]);
    out.commutatorTerm += 2.0 * frob(comm(b, mr), mr);
  }
  out.blockVariation = innerV(pi(p, nilBr), nilBr);

  Mat ebeta = Mat::Zero(n, n);
  for (int a = 0; a < m; ++a) ebeta(sp.nIdx[a], sp.nIdx[a]) = betaN(a) + b2;
  out.total = innerV(pi(ebeta, mu), mu);
  return out;
}

}  // namespace sols
