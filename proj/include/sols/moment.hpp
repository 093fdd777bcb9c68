#pragma once

#include <vector>

#include "sols/curvature.hpp"

namespace sols {

/// Moment map of the change-of-basis action at mu:
/// m(mu) = (-2 sum ad^T ad + sum ad ad^T) / |mu|^2 = 4 R(mu) / |mu|^2.
/// Defined only away from zero.
inline Mat momentMap(const Bracket& mu) {
  const double n2 = mu.normSq();
  if (n2 < 1e-24) throw ZeroBracket("moment map is undefined at the zero tensor");
  const int n = mu.dim();
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Mat a = mu.ad(i);
    m.noalias() += -2.0 * (a.transpose() * a) + a * a.transpose();
  }
  return sym(m) / n2;
}

/// Square norm of the moment map; scale-invariant.
inline double fValue(const Bracket& mu) { return momentMap(mu).squaredNorm(); }

/// Gradient of F on the unit sphere at mu/|mu|:
/// grad F = 4 (pi(m(mu)) mu - F mu), already tangential.
inline Bracket fGradientSphere(const Bracket& mu) {
  Bracket u = mu;
  u *= 1.0 / mu.norm();
  const Mat m = momentMap(u);
  const double f = m.squaredNorm();
  Bracket g = pi(m, u);
  Bracket fu = u;
  fu *= f;
  g -= fu;
  g *= 4.0;
  return g;
}

/// One recorded step of the projected gradient descent.
struct FlowStep {
  double f = 0.0;
  double gradNorm = 0.0;
  double step = 0.0;
};

struct FlowTrace {
  std::vector<FlowStep> steps;
  Bracket start;
  Bracket end;
  bool converged = false;
  int iterations = 0;
  double finalResidual = 0.0;

  FlowTrace(const Bracket& s, const Bracket& e) : start(s), end(e) {}
};

/// Projected gradient descent for F on the unit sphere with Armijo line
/// search (c1 = 1e-4, halving).  Stops when the critical-point residual
/// |pi(m)mu - F mu| drops below tol; F is nonincreasing along the trace.
inline FlowTrace descendF(const Bracket& start, double tol, int maxIter = 100000) {
  Bracket mu = start;
  if (mu.normSq() < 1e-24) throw ZeroBracket("flow start must be nonzero");
  mu *= 1.0 / mu.norm();
  FlowTrace trace(mu, mu);
  double stepInit = 1.0;
  bool stalled = false;
  for (int it = 0; it < maxIter; ++it) {
    const Mat m = momentMap(mu);
    const double f = m.squaredNorm();
    Bracket grad = pi(m, mu);
    {
      Bracket fmu = mu;
      fmu *= f;
      grad -= fmu;
      grad *= 4.0;
    }
    const double gnorm = grad.norm();
    trace.iterations = it;
    trace.finalResidual = gnorm / 4.0;
    if (trace.finalResidual <= tol) {
      trace.converged = true;
      trace.steps.push_back({f, gnorm, 0.0});
      break;
    }
    // Armijo backtracking on the sphere (step, then renormalize).
    double step = stepInit;
    bool accepted = false;
    while (step > 1e-18) {
      Bracket cand = mu;
      Bracket delta = grad;
      delta *= -step;
      cand += delta;
      cand *= 1.0 / cand.norm();
      const double fc = fValue(cand);
      if (fc <= f - 1e-4 * step * gnorm * gnorm) {
        trace.steps.push_back({f, gnorm, step});
        mu = cand;
        accepted = true;
        // Allow the step to grow back after successful moves.
        stepInit = std::min(1.0, step * 2.0);
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      trace.steps.push_back({f, gnorm, 0.0});
      stalled = true;  // line search exhausted below the minimal step
      break;
    }
  }
  trace.end = mu;
  if (!trace.converged && !stalled)
    throw MaxIterExceeded("gradient descent did not reach the residual target");
  return trace;
}

}  // namespace sols
