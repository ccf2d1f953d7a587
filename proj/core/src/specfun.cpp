#include "erlang_spectral/specfun.hpp"

#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "policy.hpp"

namespace erlang_spectral {

namespace {

template <class Real>
void require_finite(Real x, const char* what) {
  using std::isfinite;
  if (!(boost::math::isfinite)(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

}  // namespace

template <class Real>
Real gamma_fn(Real x) {
  require_finite(x, "gamma_fn");
  return boost::math::tgamma(x, detail::quiet_policy());
}

template <class Real>
Real rgamma(Real x) {
  using std::exp;
  require_finite(x, "rgamma");
  const Real pi = boost::math::constants::pi<Real>();
  if (x > Real(0.5)) return exp(-boost::math::lgamma(x, detail::quiet_policy()));
  Real s = boost::math::sin_pi(x, detail::quiet_policy());
  if (s == 0) return Real(0);
  return s * exp(boost::math::lgamma(1 - x, detail::quiet_policy())) / pi;
}

template <class Real>
Real digamma(Real x) {
  require_finite(x, "digamma");
  return boost::math::digamma(x, detail::quiet_policy());
}

template <class Real>
AiryPair<Real> airy_ai(Real x) {
  require_finite(x, "airy_ai");
  return {boost::math::airy_ai(x, detail::quiet_policy()),
          boost::math::airy_ai_prime(x, detail::quiet_policy())};
}

namespace {

constexpr int kAiryTable = 64;
constexpr int kAirySearchLimit = 10000;

// Leading terms of the standard large-index expansions.
template <class Real>
Real airy_zero_estimate(AiryZeroKind kind, int n) {
  using std::pow;
  const Real pi = boost::math::constants::pi<Real>();
  int k = n + 1;
  if (kind == AiryZeroKind::OfAi) {
    Real t = 3 * pi * (4 * k - 1) / 8;
    Real t2 = 1 / (t * t);
    return -pow(t, Real(2) / 3) * (1 + t2 * (Real(5) / 48 - t2 * Real(5) / 36));
  }
  Real t = 3 * pi * (4 * k - 3) / 8;
  Real t2 = 1 / (t * t);
  return -pow(t, Real(2) / 3) * (1 - t2 * (Real(7) / 48 - t2 * Real(35) / 288));
}

template <class Real>
Real airy_zero_solve(AiryZeroKind kind, int n) {
  auto f = [kind](Real x) {
    auto a = airy_ai(x);
    return kind == AiryZeroKind::OfAi ? a.ai : a.aip;
  };
  Real guess = airy_zero_estimate<Real>(kind, n);
  // Zero spacing is at least ~1.3 near the origin and shrinks like n^{-1/3};
  // the estimate error is far below a quarter spacing.
  Real spacing = airy_zero_estimate<Real>(kind, n) - airy_zero_estimate<Real>(kind, n + 1);
  Real half = spacing / 4;
  Real lo = guess - half, hi = guess + half;
  Real flo = f(lo), fhi = f(hi);
  if ((flo > 0) == (fhi > 0)) throw CapabilityError("airy_zero: bracket lost sign change");
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<Real>(std::numeric_limits<Real>::digits - 3),
      iters, detail::quiet_policy());
  return (r.first + r.second) / 2;
}

template <class Real>
const std::vector<Real>& airy_zero_table(AiryZeroKind kind) {
  static const std::vector<Real> ai = [] {
    std::vector<Real> v(kAiryTable);
    for (int i = 0; i < kAiryTable; ++i) v[i] = airy_zero_solve<Real>(AiryZeroKind::OfAi, i);
    return v;
  }();
  static const std::vector<Real> aip = [] {
    std::vector<Real> v(kAiryTable);
    for (int i = 0; i < kAiryTable; ++i) v[i] = airy_zero_solve<Real>(AiryZeroKind::OfAiPrime, i);
    return v;
  }();
  return kind == AiryZeroKind::OfAi ? ai : aip;
}

}  // namespace

template <class Real>
Real airy_zero(AiryZeroKind kind, int n) {
  if (n < 0) throw DomainError("airy_zero: negative index");
  if (n < kAiryTable) return airy_zero_table<Real>(kind)[n];
  if (n > kAirySearchLimit) throw CapabilityError("airy_zero: index beyond search limit");
  return airy_zero_solve<Real>(kind, n);
}

template <class Real>
Real hermite_he(int n, Real z) {
  if (n < 0) throw DomainError("hermite_he: negative degree");
  if (n == 0) return Real(1);
  Real prev = 1, cur = z;
  for (int k = 1; k < n; ++k) {
    Real next = z * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

UniformAiry pcf_uniform_airy(double A, double B) {
  if (!std::isfinite(A) || !std::isfinite(B)) throw DomainError("pcf_uniform_airy: non-finite argument");
  if (B < 8.0) throw CapabilityError("pcf_uniform_airy: B < 8 is outside the supported range");
  const double half_b = B / 2;
  const double delta = (A + B * B / 4) / std::cbrt(half_b * half_b);
  auto a = airy_ai(delta);
  const double corr = 1.0 / (std::cbrt(16.0) * std::cbrt(B * B));
  const double log_pref = -B * B / 8 + A * std::log(2 / B) + 0.5 * std::log(2 * M_PI);
  const double pref = std::exp(log_pref);
  UniformAiry out{};
  out.delta = delta;
  out.d_approx = pref * std::cbrt(half_b) * (a.ai + corr * (delta * delta * a.ai - 2 * a.aip));
  out.dprime_approx =
      pref * std::cbrt(half_b * half_b) * (a.aip + corr * (delta * delta * a.aip - 2 * delta * a.ai));
  return out;
}

#define ES_INSTANTIATE(R)                                  \
  template R gamma_fn<R>(R);                               \
  template R rgamma<R>(R);                                 \
  template R digamma<R>(R);                                \
  template AiryPair<R> airy_ai<R>(R);                      \
  template R airy_zero<R>(AiryZeroKind, int);              \
  template R hermite_he<R>(int, R);

ES_INSTANTIATE(double)
ES_INSTANTIATE(ext_float)
#undef ES_INSTANTIATE

}  // namespace erlang_spectral
