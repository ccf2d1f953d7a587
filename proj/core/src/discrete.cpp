#include "erlang_spectral/discrete.hpp"

#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <lapacke.h>

#include "erlang_spectral/quadrature.hpp"
#include "policy.hpp"

namespace erlang_spectral {

void DiscreteParams::validate() const {
  if (m < 1) throw DomainError("discrete: m must be >= 1");
  if (!std::isfinite(rho) || !(rho > 0)) throw DomainError("discrete: rho must be finite and > 0");
  if (!std::isfinite(eta) || !(eta > 0)) throw DomainError("discrete: eta must be finite and > 0");
}

DiscreteParams DiscreteParams::halfin_whitt(int m, double beta, double eta) {
  DiscreteParams dp{m, m - beta * std::sqrt(static_cast<double>(m)), eta};
  dp.validate();
  return dp;
}

double ScaledValue::value() const {
  if (mantissa == 0) return 0;
  return std::copysign(std::exp(log_scale + std::log(std::abs(mantissa))), mantissa);
}

double DeltaEval::value() const { return ScaledValue{mantissa, log_scale}.value(); }

namespace {

// sum_l rho^{n-l}/(n-l)! (theta)_l / l!, relative to rho^n/n!.
template <class Real>
Real f_sum_relative(Real theta, Real rho, int n) {
  Real term = 1, sum = 1;
  for (int l = 0; l < n; ++l) {
    term *= Real(n - l) / rho * (theta + l) / Real(l + 1);
    sum += term;
  }
  return sum;
}

struct HPair {
  double m_n{}, m_nm1{};  // mantissas for n and n-1
  double log_scale{};
  double rel_err{};
};

HPair h_pair(double theta, const DiscreteParams& dp, int n) {
  dp.validate();
  if (!std::isfinite(theta)) throw DomainError("h_n: non-finite theta");
  using C = std::complex<double>;
  const double eta = dp.eta, s = dp.rho / eta, q = theta / eta;
  const double a = n + 1 - dp.m + dp.m / eta;
  // Saddle points of s z - q log(z-1) - a log z.
  const double A = dp.rho, B = -(dp.rho + theta + a * eta), Cc = a * eta;
  const double disc = B * B - 4 * A * Cc;
  const double floor_c = 1 + 1 / std::sqrt(std::abs(a) + 1);
  double c;
  if (disc >= 0) {
    c = (-B + std::sqrt(disc)) / (2 * A);
    if (!(c > 1 + 1e-3)) c = floor_c;
  } else {
    c = std::max(floor_c, std::sqrt(Cc / A));
  }
  const double alpha = 1 / (4 * c);
  auto logf = [&](C z) { return s * z - q * std::log(z - 1.0) - a * std::log(z); };
  const double S = logf(C(c, 0)).real();
  auto z_of = [&](double y) { return C(c - alpha * y * y, y); };
  // Truncate where the integrand is below 1e-18 of its value at the vertex.
  double Y = 0.5;
  for (int k = 0; k < 60 && logf(z_of(Y)).real() - S > -45.0; ++k) Y *= 2;
  const C two_pi_i(0, 2 * M_PI);
  auto integrand = [&](double y) {
    C z = z_of(y);
    C g = std::exp(logf(z) - S) * C(-2 * alpha * y, 1) / two_pi_i;
    return std::array<double, 2>{2 * g.real(), 2 * (g * z).real()};
  };
  auto res = VectorGaussLegendre<double, 2>::integrate(integrand, 0.0, Y, 8, 1e-14);
  HPair out;
  out.m_n = res.value[0];
  out.m_nm1 = res.value[1];
  out.log_scale = S;
  const double mag = std::abs(res.value[0]);
  out.rel_err = mag > 0 ? (res.abs_err + 64 * DBL_EPSILON * res.l1[0]) / mag : INFINITY;
  return out;
}

}  // namespace

ScaledValue f_n_scaled(double theta, double rho, int n) {
  if (n < 0) throw DomainError("f_n: n must be >= 0");
  if (!std::isfinite(theta) || !std::isfinite(rho) || !(rho > 0)) throw DomainError("f_n: invalid theta or rho");
  const double lead = n * std::log(rho) - boost::math::lgamma(n + 1.0, detail::quiet_policy());
  double rel;
  if (n > 50) {
    rel = static_cast<double>(f_sum_relative<ext_float>(ext_float(theta), ext_float(rho), n));
  } else {
    rel = f_sum_relative<double>(theta, rho, n);
  }
  return {rel, lead};
}

double f_n(double theta, double rho, int n) {
  ScaledValue v = f_n_scaled(theta, rho, n);
  double x = v.value();
  if (!std::isfinite(x))
    throw CapabilityError("f_n: result overflows double; use f_n_scaled (log scale " + std::to_string(v.log_scale) + ")");
  return x;
}

ScaledValue h_n_scaled(double theta, const DiscreteParams& dp, int n, double* rel_err) {
  if (n < 0) throw DomainError("h_n: n must be >= 0");
  HPair p = h_pair(theta, dp, n);
  if (rel_err) *rel_err = p.rel_err;
  return {p.m_n, p.log_scale};
}

ContourEval h_n(double theta, const DiscreteParams& dp, int n) {
  double err = 0;
  ScaledValue v = h_n_scaled(theta, dp, n, &err);
  ContourEval out{n, theta, v.value(), err};
  if (!std::isfinite(out.value))
    throw CapabilityError("h_n: result overflows double; use h_n_scaled (log scale " + std::to_string(v.log_scale) + ")");
  return out;
}

DeltaEval delta_det(double theta, const DiscreteParams& dp) {
  dp.validate();
  const int m = dp.m;
  ScaledValue fm = f_n_scaled(theta, dp.rho, m);
  ScaledValue fm1 = f_n_scaled(theta, dp.rho, m - 1);
  HPair h = h_pair(theta, dp, m);
  const double top = std::max(fm.log_scale, fm1.log_scale);
  const double t1 = fm.mantissa * std::exp(fm.log_scale - top) * h.m_nm1;
  const double t2 = h.m_n * fm1.mantissa * std::exp(fm1.log_scale - top);
  DeltaEval out;
  out.mantissa = t1 - t2;
  out.log_scale = top + h.log_scale;
  const double cancel = (std::abs(t1) + std::abs(t2)) / std::max(std::abs(out.mantissa), DBL_MIN);
  out.quadrature_err = (h.rel_err + 1e-15) * cancel;
  return out;
}

namespace {

int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

DiscreteGap discrete_gap(const DiscreteParams& dp) {
  dp.validate();
  DiscreteGap out;
  out.bracket_hi = std::max(1.0, dp.eta) * 1.05 + 5 / std::sqrt(static_cast<double>(dp.m));
  out.bracket_lo = out.bracket_hi * 1e-4;
  auto f = [&](double lam) { return delta_det(-lam, dp).mantissa; };
  const int n = 2000;
  out.scan_points = n;
  double prev = out.bracket_lo;
  int ps = sgn(f(prev));
  for (int i = 1; i < n; ++i) {
    double lam = out.bracket_lo + (out.bracket_hi - out.bracket_lo) * i / (n - 1);
    int s = sgn(f(lam));
    if (s == 0) {
      out.gap = lam;
      return out;
    }
    if (s != ps) {
      std::uintmax_t iters = 200;
      auto tol = [](double x, double y) { return std::abs(x - y) <= 1e-12; };
      auto r = boost::math::tools::toms748_solve(f, prev, lam, tol, iters, detail::quiet_policy());
      out.gap = (r.first + r.second) / 2;
      return out;
    }
    prev = lam;
    ps = s;
  }
  throw RootNotFound("discrete_gap: no sign change of Delta in the scanned bracket", out.bracket_lo, out.bracket_hi);
}

namespace {

// Lowest two eigenvalues of the symmetrised generator on states 0..N.
std::pair<double, double> lowest_two(const DiscreteParams& dp, int N) {
  const int size = N + 1;
  std::vector<double> d(size), e(size > 1 ? size - 1 : 1);
  auto death = [&](int k) { return std::min(k, dp.m) + std::max(0, k - dp.m) * dp.eta; };
  for (int k = 0; k <= N; ++k) d[k] = (k < N ? dp.rho : 0.0) + death(k);
  for (int k = 0; k < N; ++k) e[k] = -std::sqrt(dp.rho * death(k + 1));
  std::vector<double> w(size);
  std::vector<lapack_int> iblock(size), isplit(size);
  lapack_int found = 0, nsplit = 0;
  const double abstol = 2 * LAPACKE_dlamch('S');
  lapack_int info = LAPACKE_dstebz('I', 'E', size, 0.0, 0.0, 1, 2, abstol, d.data(), e.data(), &found, &nsplit,
                                   w.data(), iblock.data(), isplit.data());
  if (info != 0 || found < 2) throw CapabilityError("generator_gap: tridiagonal eigensolver failed");
  return {w[0], w[1]};
}

}  // namespace

GeneratorGap generator_gap(const DiscreteParams& dp, int truncation) {
  dp.validate();
  int N = truncation;
  if (N <= 0) {
    const double rec = dp.m + 50 * std::sqrt(std::max(dp.rho, static_cast<double>(dp.m)) / std::min(1.0, dp.eta));
    N = static_cast<int>(std::ceil(rec));
  }
  if (N < dp.m + 2) N = dp.m + 2;
  auto prev = lowest_two(dp, N);
  for (int k = 0; k < 8; ++k) {
    const int N2 = 2 * N;
    auto cur = lowest_two(dp, N2);
    if (std::abs(cur.second - prev.second) < 1e-8) return {cur.second, cur.first, N2};
    prev = cur;
    N = N2;
  }
  throw CapabilityError("generator_gap: gap did not stabilise under truncation doubling (last N = " +
                        std::to_string(N) + ")");
}

std::vector<ConvergenceRow> convergence_study(double beta, double eta, const std::vector<int>& m_list) {
  const double r = spectral_gap(Params{beta, eta}).r;
  std::vector<ConvergenceRow> rows;
  for (int m : m_list) {
    if (m < 25) throw DomainError("convergence_study: each m must be >= 25");
    DiscreteGap g = discrete_gap(DiscreteParams::halfin_whitt(m, beta, eta));
    rows.push_back({m, g.gap, r, g.gap - r});
  }
  return rows;
}

}  // namespace erlang_spectral
