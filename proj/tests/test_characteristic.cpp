#include <cmath>

#include "doctest.h"
#include "erlang_spectral/characteristic.hpp"
#include "erlang_spectral/specfun.hpp"

using namespace erlang_spectral;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double V(double th, double beta, double eta) { return char_v(th, Params{beta, eta}).v_unscaled(); }

}  // namespace

TEST_CASE("char_v: eta = 1 reduces to the Gamma form") {
  for (double beta : {-1.3, 0.0, 2.1}) CHECK(rel(V(1, beta, 1), std::sqrt(2 * M_PI)) < 1e-12);
  for (double th : {0.4, 2.5}) CHECK(rel(V(th, 0.6, 1), std::sqrt(2 * M_PI) * rgamma(th)) < 1e-11);
}

TEST_CASE("char_v: vanishes at theta = 0") {
  for (double beta : {-2.0, -0.3, 0.0, 1.0, 3.0})
    for (double eta : {0.05, 0.5, 1.0, 4.0}) CHECK(std::abs(V(0, beta, eta)) < 1e-10);
}

TEST_CASE("char_v: values against mpmath") {
  const auto e = char_v(0.7, Params{1.0, 0.5});
  CHECK(rel(e.v_unscaled(), 0.79809048686265793) < 1e-10);
  CHECK(rel(e.m_unscaled(), -0.0050437504415895707) < 1e-8);
  CHECK(rel(e.dv_unscaled(), 0.10417881442307704) < 1e-8);
  CHECK(rel(V(-0.3, -0.5, 2), -0.51197722987672959) < 1e-10);
}

TEST_CASE("char_v: reflection symmetry") {
  for (double b : {-1.5, -0.2, 0.0, 0.8, 2.0})
    for (double e : {0.3, 0.7, 2.0, 5.0})
      for (double th : {-0.4, 0.6, 1.7}) {
        const double lhs = V(th, b, e);
        const double rhs = std::sqrt(e) * V(th / e, -b / std::sqrt(e), 1 / e);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(lhs));
      }
}

TEST_CASE("char_v: extended tier agrees with double") {
  const auto d = char_v(-0.37, Params{0.9, 0.4}, Precision::Double);
  const auto x = char_v(-0.37, Params{0.9, 0.4}, Precision::Extended);
  CHECK(rel(x.v_unscaled(), d.v_unscaled()) < 1e-11);
}

TEST_CASE("char_v_beta0: zero set") {
  CHECK(std::abs(char_v_beta0(-2.0, 1.0)) < 1e-15);
  const double r = spectral_gap(Params{0.0, 0.1}).r;
  CHECK(r == doctest::Approx(0.16988610329491839).epsilon(1e-10));
  CHECK(std::abs(char_v_beta0(-r, 0.1)) < 1e-9);
  // the Gamma form and V change sign at the same place
  for (double eta : {0.3, 2.0}) {
    const double g = spectral_gap(Params{0.0, eta}).r;
    CHECK(char_v_beta0(-g + 1e-6, eta) * char_v_beta0(-g - 1e-6, eta) < 0);
  }
  // for small eta the gap sits near 2 eta
  const double eta = 0.02, d = 0.01;
  CHECK(char_v_beta0(-2 * eta - d, eta) * char_v_beta0(-2 * eta + d, eta) < 0);
}

TEST_CASE("spectral_gap: values against mpmath") {
  CHECK(rel(spectral_gap(Params{2, 0.1}).r, 0.95576011247136438) < 1e-11);
  CHECK(rel(spectral_gap(Params{1, 0.5}).r, 0.8751056421136146) < 1e-11);
  CHECK(rel(spectral_gap(Params{0.5, 2}).r, 1.1838345908998928) < 1e-11);
  CHECK(rel(spectral_gap(Params{-2, 3}).r, 2.5102023996144249) < 1e-11);
  CHECK(rel(spectral_gap(Params{1.5, 0.3}).r, 0.90934898656428596) < 1e-11);
  const GapResult g = spectral_gap(Params{-1, 0.1});
  CHECK(g.near_eta_formulation);
  CHECK(rel(g.r_minus_eta, 2.6479198686470202e-4) < 1e-8);
}

TEST_CASE("spectral_gap: published spot values") {
  CHECK(std::abs(spectral_gap(Params{2, 0.1}).r - 0.95576) <= 5e-5);
  CHECK(std::abs(spectral_gap(Params{1.85722169752, 0.025}).r - 0.90139) <= 5e-5);
  CHECK(std::abs(spectral_gap(Params{-1, 0.1}).r_minus_eta - 2.64792e-4) <= 5e-10);
  const GapResult x = spectral_gap(Params{-1, 0.05}, Precision::Extended);
  CHECK(x.precision_used == Precision::Extended);
  CHECK(std::abs(x.r_minus_eta - 1.32910e-6) <= 5e-11);
}

TEST_CASE("spectral_gap: eta = 1 gives 1") {
  for (double b : {-3.0, -1.0, 0.0, 0.5, 2.0, 4.0}) CHECK(std::abs(spectral_gap(Params{b, 1}).r - 1) < 1e-10);
}

TEST_CASE("spectral_gap: reflection symmetry") {
  for (double b : {-2.0, -1.0, 0.0, 1.0, 2.0})
    for (double e : {0.25, 0.5, 2.0, 4.0}) {
      const double r1 = spectral_gap(Params{b, e}).r;
      const double r2 = e * spectral_gap(Params{-b / std::sqrt(e), 1 / e}).r;
      CHECK(std::abs(r1 - r2) <= 1e-8);
    }
}

TEST_CASE("spectral_gap: bracketed by min(1, eta) and max(1, eta)") {
  for (double b : {-2.0, -0.7, 0.0, 0.9, 2.5})
    for (double e : {0.1, 0.4, 0.9, 1.3, 3.0}) {
      const double r = spectral_gap(Params{b, e}).r;
      CHECK(r >= std::min(1.0, e));
      CHECK(r <= std::max(1.0, e));
    }
}

TEST_CASE("spectral_gap: large |beta| offsets") {
  const double e = 0.5;
  // exponentially small offsets from eta and from 1, against mpmath
  CHECK(std::abs(spectral_gap(Params{-4, e}).r_minus_eta - 3.558552574588401e-9) < 1e-15);
  CHECK(rel(1 - spectral_gap(Params{4, e}).r, 1.7312907857422222e-5) < 1e-9);
}

TEST_CASE("spectral_gap: invalid parameters") {
  CHECK_THROWS_AS(spectral_gap(Params{0, 0}), DomainError);
  CHECK_THROWS_AS(spectral_gap(Params{0, -1}), DomainError);
  CHECK_THROWS_AS(spectral_gap(Params{NAN, 1}), DomainError);
}

TEST_CASE("eigenvalues") {
  const EigenSet one = eigenvalues(Params{0.3, 1}, 4);
  REQUIRE(one.lambdas.size() == 4);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(one.lambdas[n] - (n + 1)) < 1e-10);

  const EigenSet small = eigenvalues(Params{0, 0.01}, 2);
  REQUIRE(small.lambdas.size() == 2);
  CHECK(rel(small.lambdas[0], 0.02) < 0.1);
  CHECK(rel(small.lambdas[1], 0.04) < 0.1);

  const EigenSet neg = eigenvalues(Params{-1, 0.2}, 3);
  CHECK(std::abs(neg.lambdas[0] - spectral_gap(Params{-1, 0.2}).r) < 1e-10);

  const EigenSet mixed = eigenvalues(Params{0.5, 0.6}, 5);
  REQUIRE(mixed.lambdas.size() == 5);
  for (std::size_t i = 0; i < mixed.lambdas.size(); ++i) {
    CHECK(std::abs(mixed.v_theta_derivs[i]) > 1e-12);
    if (i > 0) {
      CHECK(mixed.lambdas[i] > mixed.lambdas[i - 1]);
      CHECK(mixed.v_theta_derivs[i] * mixed.v_theta_derivs[i - 1] < 0);
    }
  }
}

TEST_CASE("gap_beta_derivative_sign") {
  CHECK(gap_beta_derivative_sign(Params{0.5, 0.3}) == 1);
  CHECK(gap_beta_derivative_sign(Params{0.5, 2}) == -1);
  CHECK(gap_beta_derivative_sign(Params{0.5, 1}) == 0);
}

TEST_CASE("dV/dtheta at 0: closed form against mpmath and a finite difference") {
  CHECK(rel(dv_dtheta_at_zero(Params{0.5, 0.7}), 2.5338445301456314) < 1e-8);
  for (double b : {-1.0, 0.0, 1.2})
    for (double e : {0.3, 1.0, 2.5}) {
      const double closed = dv_dtheta_at_zero(Params{b, e});
      const double analytic = char_v(0.0, Params{b, e}).dv_unscaled();
      CHECK(rel(analytic, closed) < 1e-8);
      CHECK(closed > 0);
    }
}

TEST_CASE("H(P, z) is positive") {
  for (double P : {0.5, 1.0, 2.7})
    for (double z = 0; z <= 8 + 1e-9; z += 0.25) {
      const double d = pcf_d(P, z), dz = pcf_d_dz(P, z);
      CHECK((P - z * z / 4) * d * d + dz * dz > 0);
    }
}

TEST_CASE("V and M at negative integers are related by parity") {
  for (int M = 1; M <= 3; ++M)
    for (auto [b, e] : {std::pair{0.7, 0.4}, {-0.5, 2.0}, {1.3, 0.8}}) {
      const auto c = char_v(-static_cast<double>(M), Params{b, e});
      const double sign = (M + 1) % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(c.v - sign * c.m) <= 1e-9 * std::abs(c.v));
    }
}
