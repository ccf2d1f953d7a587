// Parabolic cylinder functions D_p(z) of real index and argument.
//
// Evaluation paths:
//  * z > 0 with p <= z^2/4 (the recessive side of the turning point): the
//    Bromwich integral along the vertical line through the real saddle
//    u0 = (z + sqrt(z^2 - 4p))/2.  There |integrand| decreases monotonically
//    away from the real axis and the integral carries no cancellation.
//  * everywhere else: Taylor-series propagation of the ODE
//    y'' = (z^2/4 - p - 1/2) y from the exact values at z = 0.  Moving from
//    0 into the oscillatory zone or onto the negative axis never follows a
//    recessive solution, so the propagation is stable.
//  * z < 0 past the turning point: a reflection split, see
//    pcf_by_reflection, so that near-integer p keeps its recessive part.
// The p-derivative rides along as w = dD/dp, which solves
// w'' = (z^2/4 - p - 1/2) w - y.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "erlang_spectral/quadrature.hpp"
#include "erlang_spectral/specfun.hpp"
#include "policy.hpp"

namespace erlang_spectral {

namespace {

template <class Real>
Real eps_of() {
  return std::numeric_limits<Real>::epsilon();
}

// 1/Gamma(x) and d/dx 1/Gamma(x), both relative to exp(log_scale).
template <class Real>
struct RecipGamma {
  Real val, der, log_scale;
};

template <class Real>
RecipGamma<Real> recip_gamma_scaled(Real x) {
  using boost::math::digamma;
  using boost::math::lgamma;
  const Real pi = boost::math::constants::pi<Real>();
  detail::quiet_policy pol;
  if (x > Real(0.5)) return {Real(1), -digamma(x, pol), -lgamma(x, pol)};
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi.
  Real s = boost::math::sin_pi(x, pol);
  Real c = boost::math::cos_pi(x, pol);
  return {s / pi, c - s * digamma(1 - x, pol) / pi, lgamma(1 - x, pol)};
}

// (y, y', w, w') relative to exp(log_scale).
template <class Real>
struct OdeState {
  Real y, yz, w, wz, log_scale;
};

template <class Real>
OdeState<Real> seed_at_origin(Real p) {
  using std::exp;
  using std::log;
  using std::sqrt;
  const Real pi = boost::math::constants::pi<Real>();
  const Real sqrtpi = sqrt(pi);
  const Real ln2 = boost::math::constants::ln_two<Real>();
  // D_p(0)  =  sqrt(pi) 2^{p/2}     / Gamma((1-p)/2)
  // D'_p(0) = -sqrt(pi) 2^{(p+1)/2} / Gamma(-p/2)
  auto g1 = recip_gamma_scaled<Real>((1 - p) / 2);
  auto g2 = recip_gamma_scaled<Real>(-p / 2);
  Real s1 = p / 2 * ln2 + g1.log_scale;
  Real s2 = (p + 1) / 2 * ln2 + g2.log_scale;
  Real y = sqrtpi * g1.val;
  Real w = sqrtpi * (ln2 / 2 * g1.val - g1.der / 2);
  Real yz = -sqrtpi * g2.val;
  Real wz = -sqrtpi * (ln2 / 2 * g2.val - g2.der / 2);
  Real big = std::max(s1, s2);
  Real f1 = exp(s1 - big), f2 = exp(s2 - big);
  return {y * f1, yz * f2, w * f1, wz * f2, big};
}

constexpr int kMaxTaylor = 400;

// Advance (y, y', w, w') from z0 to z0 + h with a local Taylor series.
template <class Real>
void taylor_step(OdeState<Real>& s, Real z0, Real h, Real a) {
  using std::abs;
  const Real c0 = z0 * z0 / 4 - a, c1 = z0 / 2, c2 = Real(0.25);
  std::array<Real, kMaxTaylor + 3> ya{}, wb{};
  ya[0] = s.y;
  ya[1] = s.yz;
  wb[0] = s.w;
  wb[1] = s.wz;
  Real Y = ya[0] + ya[1] * h, Yz = ya[1];
  Real W = wb[0] + wb[1] * h, Wz = wb[1];
  Real hk = h;  // h^k for the highest term added so far
  const Real tiny = eps_of<Real>() / 8;
  int quiet = 0;
  for (int k = 0; k + 2 <= kMaxTaylor; ++k) {
    Real ay = c0 * ya[k], bw = c0 * wb[k] - ya[k];
    if (k >= 1) {
      ay += c1 * ya[k - 1];
      bw += c1 * wb[k - 1];
    }
    if (k >= 2) {
      ay += c2 * ya[k - 2];
      bw += c2 * wb[k - 2];
    }
    Real den = Real((k + 2) * (k + 1));
    ya[k + 2] = ay / den;
    wb[k + 2] = bw / den;
    Real hkm1 = hk;  // h^{k+1}
    hk *= h;         // h^{k+2}
    Real ty = ya[k + 2] * hk, tw = wb[k + 2] * hk;
    Y += ty;
    W += tw;
    Yz += (k + 2) * ya[k + 2] * hkm1;
    Wz += (k + 2) * wb[k + 2] * hkm1;
    Real ref = abs(Y) + abs(W) + abs(h) * (abs(Yz) + abs(Wz));
    Real term = (abs(ty) + abs(tw)) * (k + 3);
    if (k >= 2 && term <= tiny * ref) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  s.y = Y;
  s.yz = Yz;
  s.w = W;
  s.wz = Wz;
}

template <class Real>
void renormalize(OdeState<Real>& s) {
  using std::abs;
  using std::log;
  Real m = std::max(abs(s.y), abs(s.yz));
  if (m > Real(1e32) || (m < Real(1e-32) && m > 0)) {
    s.y /= m;
    s.yz /= m;
    s.w /= m;
    s.wz /= m;
    s.log_scale += log(m);
  }
}

// Propagate a seeded state at z = 0 to z.
template <class Real>
PcfEval<Real> propagate_from_origin(OdeState<Real> s, Real p, Real z) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::sqrt;
  const Real a = p + Real(0.5);
  renormalize(s);
  const int dir = z >= 0 ? 1 : -1;
  Real z0 = 0;
  Real remaining = abs(z);
  int steps = 0;
  Real maxlog = log(abs(s.y) + abs(s.yz) + std::numeric_limits<Real>::min()) + s.log_scale;
  while (remaining > 0) {
    Real h = std::min(Real(0.5), remaining);
    for (int it = 0; it < 2; ++it) {
      Real z1 = z0 + dir * h;
      Real q = std::max(abs(z0 * z0 / 4 - a), abs(z1 * z1 / 4 - a));
      Real omega = sqrt(q) + Real(0.25) * sqrt(abs(z1));
      if (omega * h > Real(1.5)) h = Real(1.5) / omega;
    }
    bool last = h >= remaining;
    taylor_step(s, z0, dir * h, a);
    z0 = last ? z : z0 + dir * h;
    remaining = last ? Real(0) : remaining - h;
    ++steps;
    renormalize(s);
    Real lm = log(abs(s.y) + abs(s.yz) + std::numeric_limits<Real>::min()) + s.log_scale;
    if (lm > maxlog) maxlog = lm;
  }
  PcfEval<Real> out;
  out.value = s.y;
  out.dz = s.yz;
  out.dp = s.w;
  out.dzdp = s.wz;
  out.log_scale = s.log_scale;
  out.abs_err_est = eps_of<Real>() * (16 + 4 * steps) * exp(maxlog - s.log_scale);
  return out;
}

template <class Real>
PcfEval<Real> pcf_by_bromwich(Real p, Real z) {
  using std::abs;
  using std::atan2;
  using std::cos;
  using std::exp;
  using std::log;
  using std::log1p;
  using std::sin;
  using std::sqrt;
  const Real pi = boost::math::constants::pi<Real>();
  const Real u0 = (z + sqrt(z * z - 4 * p)) / 2;
  const Real u0sq = u0 * u0;
  const Real h0 = p * log(u0) - z * u0 + u0sq / 2;
  const Real zh = z / 2 - u0;
  // |exp(h(u0+iy) - h(u0))| = exp(p/2 log(1+y^2/u0^2) - y^2/2), decreasing in y.
  auto logmag = [&](Real y) { return p / 2 * log1p(y * y / u0sq) - y * y / 2; };
  const Real cutoff = log(eps_of<Real>()) - 12;
  Real Y = 2;
  while (logmag(Y) + log(2 + Y + abs(z) + abs(log(u0 + Y))) > cutoff) Y *= Real(1.25);

  auto integrand = [&](Real y) {
    Real lr = log(u0sq + y * y) / 2;
    Real li = atan2(y, u0);
    Real re = p / 2 * log1p(y * y / u0sq) - y * y / 2;
    Real im = p * li + (u0 - z) * y;
    Real e = exp(re);
    Real er = e * cos(im), ei = e * sin(im);
    Real gr = lr * er - li * ei, gi = lr * ei + li * er;
    return std::array<Real, 4>{er, zh * er + y * ei, gr, zh * gr + y * gi};
  };
  const Real rel_tol = std::numeric_limits<Real>::digits > 60 ? Real(1e-31) : Real(1e-14);
  auto res = VectorGaussLegendre<Real, 4>::integrate(integrand, Real(0), Y, 4, rel_tol);

  PcfEval<Real> out;
  out.value = res.value[0];
  out.dz = res.value[1];
  out.dp = res.value[2];
  out.dzdp = res.value[3];
  out.abs_err_est = res.abs_err + eps_of<Real>() * 8 * res.l1[0];
  out.log_scale = z * z / 4 + h0 + log(2 / sqrt(2 * pi));
  return out;
}

template <class Real>
bool bromwich_region(Real p, Real z) {
  using std::sqrt;
  if (!(z > 0) || p > z * z / 4) return false;
  return z >= 1 || z * sqrt(z * z / 4 - p) >= 1;
}

template <class Real>
PcfEval<Real> pcf_by_ode(Real p, Real z) {
  return propagate_from_origin(seed_at_origin(p), p, z);
}

// z = -x < 0 beyond the turning point.  Split
//   D_p(-x) = cos(pi p) D_p(x) + G(x),
// where G solves the same ODE with G(0) = D_p(0)(1 - cos pi p) and
// G'(0) = -D'_p(0)(1 + cos pi p).  G is the growing solution (it carries the
// factor 1/Gamma(-p)), so propagating it outward is stable, while the
// recessive part D_p(x) comes from the Bromwich integral.  Near integer p
// this keeps full relative accuracy where direct propagation would not.
template <class Real>
PcfEval<Real> pcf_by_reflection(Real p, Real x) {
  using std::exp;
  const Real pi = boost::math::constants::pi<Real>();
  detail::quiet_policy pol;
  const Real c = boost::math::cos_pi(p, pol);
  const Real s = boost::math::sin_pi(p, pol);
  const Real sh = boost::math::sin_pi(p / 2, pol), ch = boost::math::cos_pi(p / 2, pol);
  const Real one_minus_c = 2 * sh * sh, one_plus_c = 2 * ch * ch;

  PcfEval<Real> r = pcf_by_bromwich(p, x);
  OdeState<Real> d0 = seed_at_origin(p);
  OdeState<Real> g0{d0.y * one_minus_c, -d0.yz * one_plus_c, d0.w * one_minus_c + d0.y * pi * s,
                    -d0.wz * one_plus_c + d0.yz * pi * s, d0.log_scale};
  PcfEval<Real> g = propagate_from_origin(g0, p, x);

  const Real big = std::max(r.log_scale, g.log_scale);
  const Real fr = exp(r.log_scale - big), fg = exp(g.log_scale - big);
  PcfEval<Real> out;
  out.value = c * r.value * fr + g.value * fg;
  out.dz = -(c * r.dz * fr + g.dz * fg);
  out.dp = (-pi * s * r.value + c * r.dp) * fr + g.dp * fg;
  out.dzdp = -((-pi * s * r.dz + c * r.dzdp) * fr + g.dzdp * fg);
  out.abs_err_est = r.abs_err_est * fr + g.abs_err_est * fg;
  out.log_scale = big;
  return out;
}

}  // namespace

template <class Real>
PcfEval<Real> pcf(Real p, Real z) {
  if (!(boost::math::isfinite)(p) || !(boost::math::isfinite)(z))
    throw DomainError("pcf: non-finite argument");
  if (bromwich_region(p, z)) return pcf_by_bromwich(p, z);
  if (z < 0 && bromwich_region(p, -z)) return pcf_by_reflection(p, -z);
  return pcf_by_ode(p, z);
}

template PcfEval<double> pcf<double>(double, double);
template PcfEval<ext_float> pcf<ext_float>(ext_float, ext_float);

PcfEval<double> pcf_eval(double p, double z) { return pcf<double>(p, z).unscaled(); }
double pcf_d(double p, double z) { return pcf_eval(p, z).value; }
double pcf_d_dz(double p, double z) { return pcf_eval(p, z).dz; }
double pcf_d_dp(double p, double z) { return pcf_eval(p, z).dp; }

}  // namespace erlang_spectral
