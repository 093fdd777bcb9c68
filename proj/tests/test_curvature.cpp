#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "sols/curvature.hpp"

using namespace sols;
using Catch::Approx;

namespace {

Bracket diagExtension(double a, double b, double c) {
  Bracket mu(4);
  mu.set(0, 1, 1, a);
  mu.set(0, 2, 2, b);
  mu.set(0, 3, 3, c);
  return mu;
}

}  // namespace

TEST_CASE("curvature operator on the Heisenberg bracket") {
  const Mat r = curvatureOperator(tst::h3());
  Mat expect = Mat::Zero(3, 3);
  expect.diagonal() << -0.5, -0.5, 0.5;
  CHECK((r - expect).norm() < 1e-14);

  // Quadratic scaling: doubling the bracket quadruples the operator.
  Bracket twice(3);
  twice.set(0, 1, 2, 2.0);
  CHECK((curvatureOperator(twice) - 4.0 * expect).norm() < 1e-14);
}

TEST_CASE("curvature operator agrees with its polarized quadratic form") {
  std::mt19937_64 rng(31);
  CHECK((curvatureOperator(tst::h3()) - tst::curvatureQuadraticOracle(tst::h3())).norm() <
        1e-13);
  for (int trial = 0; trial < 10; ++trial) {
    const Bracket mu = tst::randTensor(rng, 3 + static_cast<int>(rng() % 3));
    const Mat r = curvatureOperator(mu);
    CHECK((r - tst::curvatureQuadraticOracle(mu)).norm() < 1e-12 * std::max(1.0, r.norm()));
  }
}

TEST_CASE("trace of the curvature operator on nilpotent brackets") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Bracket mu = tst::randomNilpotent(rng, 3 + static_cast<int>(rng() % 4));
    CHECK(std::abs(curvatureOperator(mu).trace() + 0.25 * mu.normSq()) <=
          1e-10 * mu.normSq());
  }
}

TEST_CASE("Killing form and mean curvature on rank-one extensions") {
  SECTION("hyperbolic space") {
    const Bracket mu = tst::r3Lambda(1.0);
    const Mat b = killingForm(mu);
    Mat bExpect = Mat::Zero(3, 3);
    bExpect(0, 0) = 2.0;
    CHECK((b - bExpect).norm() < 1e-14);
    const Vec h = meanCurvatureVector(mu);
    CHECK((h - 2.0 * Vec::Unit(3, 0)).norm() < 1e-14);
    CHECK((ricci(mu) + 2.0 * Mat::Identity(3, 3)).norm() < 1e-13);
    CHECK(scalarCurvature(mu) == Approx(-6.0));
  }
  SECTION("diagonal extension of an abelian core") {
    const Bracket mu = diagExtension(1.0, 0.7, -0.3);
    CHECK((meanCurvatureVector(mu) - 1.4 * Vec::Unit(4, 0)).norm() < 1e-14);
  }
  SECTION("nilpotent brackets have vanishing Killing form and trace") {
    CHECK(killingForm(tst::h3()).norm() == 0.0);
    CHECK(meanCurvatureVector(tst::h3()).norm() == 0.0);
    CHECK(killingForm(tst::filiform(4)).norm() == 0.0);
  }
}

TEST_CASE("ricci on the Heisenberg bracket") {
  const Mat ric = ricci(tst::h3());
  Mat expect = Mat::Zero(3, 3);
  expect.diagonal() << -0.5, -0.5, 0.5;
  CHECK((ric - expect).norm() < 1e-14);
  CHECK(scalarCurvature(tst::h3()) == Approx(-0.5));
}

TEST_CASE("blockwise ricci agrees with the operator route") {
  std::mt19937_64 rng(33);
  SECTION("aligned catalog-style extensions") {
    const Bracket mu = tst::r3Lambda(0.5);
    Splitting s;
    s.aIdx = {0};
    s.nIdx = {1, 2};
    CHECK((ricciBlockwise(mu, s, 1e-9) - ricci(mu)).norm() < 1e-12);
  }
  SECTION("nilpotent brackets split with an empty complement") {
    Splitting s;
    s.nIdx = {0, 1, 2};
    CHECK((ricciBlockwise(tst::h3(), s, 1e-9) - ricci(tst::h3())).norm() < 1e-13);
  }
  SECTION("random solvable extensions") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto [mu, s] = tst::randomSolvableAligned(rng);
      const Mat ric = ricci(mu);
      CHECK((ricciBlockwise(mu, s, 1e-9) - ric).norm() <
            1e-10 * std::max(1.0, ric.norm()));
    }
  }
}

TEST_CASE("trace identities for the curvature operator") {
  std::mt19937_64 rng(34);
  SECTION("pairing with an arbitrary endomorphism") {
    for (int trial = 0; trial < 20; ++trial) {
      const Bracket mu = tst::randTensor(rng, 3 + static_cast<int>(rng() % 3));
      const Mat r = curvatureOperator(mu);
      const Mat e = tst::randGauss(rng, mu.dim(), mu.dim());
      CHECK(std::abs(frob(r, e.transpose()) - 0.25 * innerV(pi(e, mu), mu)) <
            1e-11 * std::max(1.0, e.norm()));
    }
  }
  SECTION("derivations pair to zero") {
    for (const Bracket& mu : {tst::h3(), tst::r3Lambda(1.0), tst::filiform(4)}) {
      const Mat r = curvatureOperator(mu);
      for (const Mat& d : derivationBasis(mu, 1e-9))
        CHECK(std::abs(frob(r, d.transpose())) < 1e-10);
    }
  }
  SECTION("commutator of an adjoint with its transpose") {
    for (int trial = 0; trial < 10; ++trial) {
      const Bracket mu = tst::randomNilpotent(rng, 3 + static_cast<int>(rng() % 4));
      const Vec a = tst::randGauss(rng, mu.dim(), 1);
      const Mat ada = mu.ad(a);
      const double lhs = frob(curvatureOperator(mu), comm(ada, ada.transpose()).transpose());
      const double rhs = 0.25 * innerV(pi(ada.transpose(), mu), pi(ada.transpose(), mu));
      CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, rhs));
    }
  }
}
