#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "helpers.hpp"
#include "stellar/majorana.hpp"
#include "stellar/spin.hpp"
#include "stellar/wigner.hpp"

using namespace stellar;

namespace {

std::vector<BlochPoint> coherent_reference(Spin spin, MagneticQuantumNumber m,
                                           Real alpha, Real beta) {
  const BlochPoint at(alpha, beta);
  std::vector<BlochPoint> pts(static_cast<std::size_t>(spin.index_of(m)), at);
  pts.resize(static_cast<std::size_t>(spin.twice()), at.antipode());
  return pts;
}

BlochPoint rotate_point(const BlochPoint& p, const EulerAngles& e) {
  const Eigen::Matrix3d r =
      (Eigen::AngleAxisd(e.alpha, Vector3r::UnitZ()) *
       Eigen::AngleAxisd(e.beta, Vector3r::UnitY()) *
       Eigen::AngleAxisd(e.gamma, Vector3r::UnitZ()))
          .toRotationMatrix();
  return bloch_from_cartesian(r * p.cartesian());
}

}  // namespace

TEST_CASE("polynomial coefficients") {
  SUBCASE("S = 1/2: both variants give a*x + b") {
    const VectorC v = (VectorC(2) << Complex(0.6, 0), Complex(0, 0.8)).finished();
    const SpinState s(Spin(1), v);
    for (PolynomialVariant variant :
         {PolynomialVariant::kBacry, PolynomialVariant::kMajorana}) {
      const SpinPolynomial p = build_polynomial(s, variant);
      CHECK(p.coefficients[0] == v[0]);  // coefficient of x
      CHECK(p.coefficients[1] == v[1]);  // constant term
    }
  }

  SUBCASE("S = 1 basis state psi_0^0 maps to the monomial x") {
    const SpinState s(Spin(2), (VectorC(3) << 0, 1, 0).finished());
    const SpinPolynomial p =
        build_polynomial(s, PolynomialVariant::kMajorana);
    CHECK(p.coefficients[0] == Complex(0, 0));
    CHECK(p.coefficients[2] == Complex(0, 0));
    CHECK(std::abs(p.coefficients[1]) > 0);
  }

  SUBCASE("variants differ on generic S = 1 states") {
    std::mt19937_64 gen(61);
    const SpinState s = testutil::random_state(Spin(2), gen);
    const SpinPolynomial bacry = build_polynomial(s, PolynomialVariant::kBacry);
    const SpinPolynomial maj =
        build_polynomial(s, PolynomialVariant::kMajorana);
    // Not proportional: compare after normalizing by the leading coefficient.
    const VectorC nb = bacry.coefficients / bacry.coefficients[0];
    const VectorC nm = maj.coefficients / maj.coefficients[0];
    CHECK((nb - nm).cwiseAbs().maxCoeff() > 1e-3);
  }
}

TEST_CASE("projective roots") {
  SUBCASE("x^2 from the S = 1 lowest-weight state: a double root at zero") {
    const SpinState s(Spin(2), (VectorC(3) << 1, 0, 0).finished());
    const SpinPolynomial p =
        build_polynomial(s, PolynomialVariant::kMajorana);
    CHECK(std::abs(p.coefficients[0]) == 1.0);  // the x^2 coefficient
    const auto rs = roots(p);
    REQUIRE(rs.size() == 2);
    for (const ProjectiveRoot& r : rs) {
      CHECK(!r.at_infinity);
      CHECK(r.value == Complex(0, 0));
    }
  }

  SUBCASE("degree deficiency contributes points at infinity") {
    SpinPolynomial p{Spin(2),
                     (VectorC(3) << 0, Complex(1, 1), Complex(0.5, 0)).finished(),
                     PolynomialVariant::kBacry};
    const auto rs = roots(p);
    REQUIRE(rs.size() == 2);
    CHECK((rs[0].at_infinity ? 1 : 0) + (rs[1].at_infinity ? 1 : 0) == 1);
  }

  SUBCASE("random degree-4 polynomials: small residuals, product rebuilds") {
    std::mt19937_64 gen(67);
    std::normal_distribution<Real> g;
    for (int trial = 0; trial < 50; ++trial) {
      VectorC c(5);
      for (int k = 0; k < 5; ++k) c[k] = Complex(g(gen), g(gen));
      SpinPolynomial p{Spin(4), c, PolynomialVariant::kBacry};
      const auto rs = roots(p);
      REQUIRE(rs.size() == 4);
      const Real scale = c.cwiseAbs().maxCoeff();
      VectorC rebuilt(1);
      rebuilt[0] = c[0];
      for (const ProjectiveRoot& r : rs) {
        REQUIRE(!r.at_infinity);
        // residual of the polynomial at the root
        Complex val = 0;
        for (int k = 0; k < 5; ++k) val = val * r.value + c[k];
        CHECK(std::abs(val) / scale < 1e-8);
        VectorC next = VectorC::Zero(rebuilt.size() + 1);
        for (Eigen::Index k = 0; k < rebuilt.size(); ++k) {
          next[k] += rebuilt[k];
          next[k + 1] -= r.value * rebuilt[k];
        }
        rebuilt = next;
      }
      CHECK((rebuilt - c).cwiseAbs().maxCoeff() / scale < 1e-8);
    }
  }

  SUBCASE("the zero polynomial has no root multiset") {
    SpinPolynomial p{Spin(2), VectorC::Zero(3), PolynomialVariant::kBacry};
    CHECK_THROWS_AS(roots(p), std::domain_error);
  }
}

TEST_CASE("root-to-sphere conventions") {
  CHECK(bloch_of_root(ProjectiveRoot::finite({0, 0})).beta == kPi);
  CHECK(bloch_of_root(ProjectiveRoot::finite({0, 0})).alpha == 0.0);
  CHECK(bloch_of_root(ProjectiveRoot::infinity()).beta == 0.0);

  SUBCASE("the factor of a sphere point has that point as its root") {
    std::mt19937_64 gen(71);
    std::uniform_real_distribution<Real> u(0.02, 0.98);
    for (int k = 0; k < 200; ++k) {
      const Real a = 2 * kPi * u(gen), b = kPi * u(gen);
      const SpinPolynomial factor = build_polynomial(
          coherent_state(Spin(1), MagneticQuantumNumber{1}, EulerAngles(a, b)),
          PolynomialVariant::kMajorana);
      const Complex root = -factor.coefficients[1] / factor.coefficients[0];
      const BlochPoint p = bloch_of_root(ProjectiveRoot::finite(root));
      CHECK(std::abs(p.alpha - a) < 1e-12);
      CHECK(std::abs(p.beta - b) < 1e-12);
    }
  }
}

TEST_CASE("coherent states decompose into aligned and antipodal points") {
  std::mt19937_64 gen(73);
  std::uniform_real_distribution<Real> u(0.05, 0.95);
  for (int ts = 1; ts <= 8; ++ts) {
    const Spin spin(ts);
    for (MagneticQuantumNumber m : spin.magnetic_numbers()) {
      const Real a = 2 * kPi * u(gen), b = kPi * u(gen);
      const Constellation c =
          state_to_constellation(coherent_state(spin, m, EulerAngles(a, b)));
      const Real err = testutil::best_matching_error(
          c.points, coherent_reference(spin, m, a, b));
      CHECK(err < 1e-6);
    }
  }
}

TEST_CASE("basis states decompose into exact pole multisets") {
  for (int ts : {1, 2, 3, 8}) {
    const Spin spin(ts);
    for (MagneticQuantumNumber m : spin.magnetic_numbers()) {
      const Constellation c = state_to_constellation(
          coherent_state(spin, m, EulerAngles(0, 0)));
      int north = 0, south = 0;
      for (const BlochPoint& p : c.points) {
        if (p.beta == 0.0) ++north;
        if (p.beta == kPi) ++south;
      }
      CHECK(north == spin.index_of(m));
      CHECK(south == ts - spin.index_of(m));
    }
  }
}

TEST_CASE("spin-1/2 constellation is the Bloch point itself") {
  std::mt19937_64 gen(79);
  for (int k = 0; k < 50; ++k) {
    const SpinState s = testutil::random_state(Spin(1), gen);
    const Constellation c = state_to_constellation(s);
    REQUIRE(c.points.size() == 1);
    CHECK(angular_distance(c.points[0], bloch_of_state(s)) < 1e-10);
  }
}

TEST_CASE("constellation round trips") {
  std::mt19937_64 gen(83);

  SUBCASE("state -> constellation -> state") {
    for (int ts = 1; ts <= 8; ++ts) {
      for (int k = 0; k < 200; ++k) {
        const SpinState s = testutil::random_state(Spin(ts), gen);
        const SpinState back = constellation_to_state(state_to_constellation(s));
        CHECK(ray_overlap(s, back) >= 1 - 1e-8);
      }
    }
  }

  SUBCASE("constellation -> state -> constellation") {
    for (int ts = 1; ts <= 8; ++ts) {
      for (int k = 0; k < 25; ++k) {
        std::vector<BlochPoint> pts;
        for (int j = 0; j < ts; ++j) pts.push_back(testutil::random_point(gen));
        const Constellation orig(Spin(ts), pts);
        const Constellation back =
            state_to_constellation(constellation_to_state(orig));
        CHECK(testutil::best_matching_error(back.points, orig.points) < 1e-6);
      }
    }
  }

  SUBCASE("global phase does not move the stars") {
    const SpinState s = testutil::random_state(Spin(5), gen);
    const SpinState t(Spin(5),
                      std::polar(Real(1), Real(2.13)) * s.amplitudes());
    CHECK(testutil::best_matching_error(state_to_constellation(s).points,
                                        state_to_constellation(t).points) <
          1e-9);
  }
}

TEST_CASE("coherent multisets reconstruct coherent states") {
  std::mt19937_64 gen(89);
  std::uniform_real_distribution<Real> u(0.05, 0.95);

  SUBCASE("2S aligned points give the maximal state") {
    for (int ts : {1, 2, 3, 6}) {
      const Real a = 2 * kPi * u(gen), b = kPi * u(gen);
      const Constellation c(
          Spin(ts),
          std::vector<BlochPoint>(static_cast<std::size_t>(ts),
                                  BlochPoint(a, b)));
      const SpinState expected = coherent_state(
          Spin(ts), MagneticQuantumNumber{ts}, EulerAngles(a, b));
      CHECK(ray_overlap(constellation_to_state(c), expected) >= 1 - 1e-12);
    }
  }

  SUBCASE("a pole and its antipode give psi_0^0 for S = 1") {
    const Constellation c(Spin(2), {BlochPoint(0, 0), BlochPoint(0, kPi)});
    const SpinState expected(Spin(2), (VectorC(3) << 0, 1, 0).finished());
    CHECK(ray_overlap(constellation_to_state(c), expected) >= 1 - 1e-12);
    CHECK(ray_overlap(constellation_to_state(c),
                      constellation_to_state(state_to_constellation(expected))) >=
          1 - 1e-12);
  }

  SUBCASE("point order is immaterial") {
    std::vector<BlochPoint> pts;
    for (int j = 0; j < 4; ++j) pts.push_back(testutil::random_point(gen));
    const SpinState s1 = constellation_to_state(Constellation(Spin(4), pts));
    std::reverse(pts.begin(), pts.end());
    std::swap(pts[0], pts[2]);
    const SpinState s2 = constellation_to_state(Constellation(Spin(4), pts));
    CHECK(ray_overlap(s1, s2) >= 1 - 1e-12);
  }

  SUBCASE("wrong point count is rejected") {
    CHECK_THROWS_AS(Constellation(Spin(4), {BlochPoint(0, 0)}),
                    std::domain_error);
  }
}

TEST_CASE("the constellation rotates rigidly with the state") {
  std::mt19937_64 gen(97);
  for (int ts = 1; ts <= 6; ++ts) {
    for (int k = 0; k < 10; ++k) {
      const SpinState s = testutil::random_state(Spin(ts), gen);
      const EulerAngles e = testutil::random_angles(gen);
      const SpinState rotated(
          Spin(ts), (wigner_matrix(Spin(ts), e) * s.amplitudes()).eval());
      std::vector<BlochPoint> expected;
      for (const BlochPoint& p : state_to_constellation(s).points)
        expected.push_back(rotate_point(p, e));
      CHECK(testutil::best_matching_error(
                state_to_constellation(rotated).points, expected) < 1e-6);
    }
  }
}

TEST_CASE("Bacry and Majorana constellations differ for S = 1") {
  // Documented witness: amplitudes (1, 1, 1)/sqrt(3).
  const SpinState witness =
      SpinState::normalized(Spin(2), (VectorC(3) << 1, 1, 1).finished());
  const auto stars = [](const SpinState& s, PolynomialVariant v) {
    std::vector<BlochPoint> pts;
    for (const ProjectiveRoot& r : roots(build_polynomial(s, v)))
      pts.push_back(bloch_of_root(r));
    return pts;
  };
  const Real gap =
      testutil::best_matching_error(stars(witness, PolynomialVariant::kBacry),
                                    stars(witness, PolynomialVariant::kMajorana));
  CHECK(gap > 1e-3);

  // ... while for S = 1/2 the two variants coincide exactly.
  std::mt19937_64 gen(101);
  for (int k = 0; k < 20; ++k) {
    const SpinState s = testutil::random_state(Spin(1), gen);
    CHECK(testutil::best_matching_error(
              stars(s, PolynomialVariant::kBacry),
              stars(s, PolynomialVariant::kMajorana)) < 1e-14);
  }
}
