#include "erlang_spectral/transient.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "policy.hpp"

namespace erlang_spectral {

namespace {

const double kLogSqrt2Pi = 0.5 * std::log(2 * M_PI);

// exp(a^2/2) * int_a^inf exp(-u^2/2) du
double mills(double a) {
  const double x = a / std::sqrt(2.0);
  if (x < 25) return std::sqrt(M_PI / 2) * std::exp(x * x) * boost::math::erfc(x);
  const double ix2 = 1 / (x * x);
  return std::sqrt(M_PI / 2) / (x * std::sqrt(M_PI)) * (1 - ix2 / 2 * (1 - 1.5 * ix2 * (1 - 2.5 * ix2)));
}

double expand(double m, double l) {
  if (m == 0) return 0;
  return std::copysign(std::exp(l + std::log(std::abs(m))), m);
}

double log_abs(const PcfEval<double>& d) { return d.log_scale + std::log(std::abs(d.value)); }

void check_params(double x, double x0, double t_or_theta) {
  if (!std::isfinite(x) || !std::isfinite(x0) || !std::isfinite(t_or_theta))
    throw DomainError("transient: non-finite argument");
}

bool near_gamma_pole(double theta) {
  return theta <= 0 && std::abs(theta - std::nearbyint(theta)) < 1e-12;
}

double laplace_native(double x, double x0, double theta, const Params& p) {
  const double b = p.beta, eta = p.eta;
  auto V = char_v<double>(theta, p, true);
  if (V.v == 0 || std::abs(V.v) < 1e-12 * std::max(1.0, std::abs(theta)) * std::abs(V.dv_dtheta))
    throw PoleError("laplace_density: theta is a zero of V", V.dv_dtheta != 0 ? theta - V.v / V.dv_dtheta : theta);
  const double common = 0.5 * b * (x0 - x);
  if (x > 0) {
    auto A = pcf<double>(-theta, -x0 - b);
    auto B = pcf<double>(-theta / eta, (eta * x + b) / std::sqrt(eta));
    double l = common + 0.25 * (x0 * x0 - eta * x * x) + A.log_scale + B.log_scale - V.log_scale;
    return expand(A.value * B.value / V.v, l);
  }
  const double lo = std::min(x, x0), hi = std::max(x, x0);
  auto outer = pcf<double>(-theta, -lo - b);
  auto P = pcf<double>(-theta, hi + b);
  auto Q = pcf<double>(-theta, -hi - b);
  const double top = std::max(P.log_scale, Q.log_scale);
  const double br =
      P.value * std::exp(P.log_scale - top) + Q.value * (V.m / V.v) * std::exp(Q.log_scale - top);
  int gsign = 1;
  const double lg = boost::math::lgamma(theta, &gsign, detail::quiet_policy());
  double l = common + 0.25 * (x0 * x0 - x * x) + lg - kLogSqrt2Pi + outer.log_scale + top;
  return expand(gsign * outer.value * br, l);
}

}  // namespace

SteadyDensity::SteadyDensity(const Params& p) : params(p) {
  p.validate();
  const double inv = mills(p.beta / std::sqrt(p.eta)) / std::sqrt(p.eta) + mills(-p.beta);
  c = 1 / inv;
}

double SteadyDensity::operator()(double x) const {
  const double q = x > 0 ? params.eta * x * x : x * x;
  return c * std::exp(-0.5 * q - params.beta * x);
}

double SteadyDensity::relaxation_time() const { return 1 / spectral_gap(params).r; }

double steady_density(double x, const Params& params) {
  if (!std::isfinite(x)) throw DomainError("steady_density: non-finite x");
  return SteadyDensity(params)(x);
}

double laplace_density(double x, double x0, double theta, const Params& params, bool allow_continuation) {
  params.validate();
  check_params(x, x0, theta);
  if (!(theta > 0) && !allow_continuation)
    throw DomainError("laplace_density: theta must be > 0 (pass allow_continuation for analytic continuation)");
  if (near_gamma_pole(theta)) {
    // Removable: the bracket in the x < 0 branches vanishes at Gamma poles.
    const double h = 1e-6;
    return 0.5 * (laplace_density(x, x0, theta - h, params, true) + laplace_density(x, x0, theta + h, params, true));
  }
  if (x0 <= 0) return laplace_native(x, x0, theta, params);
  // Reflection x -> -x sqrt(eta), t -> eta t, beta -> -beta/sqrt(eta), eta -> 1/eta.
  const double se = std::sqrt(params.eta);
  Params r{-params.beta / se, 1 / params.eta};
  return laplace_native(-x * se, -x0 * se, theta / params.eta, r) / se;
}

SpectralExpansion::SpectralExpansion(const Params& params, int n_terms) : params_(params) {
  params.validate();
  if (n_terms < 1) throw DomainError("spectral expansion: n_terms must be >= 1");
  n_terms = std::min(n_terms, kMaxSpectralTerms);
  EigenSet es = eigenvalues(params, n_terms + 1);
  const std::size_t usable = std::min<std::size_t>(es.lambdas.size(), static_cast<std::size_t>(n_terms));
  next_lambda_ = es.lambdas.size() > usable ? es.lambdas[usable]
                                            : (usable ? es.lambdas.back() + std::min(1.0, params.eta) : 1.0);
  const double se = std::sqrt(params.eta);
  for (std::size_t i = 0; i < usable; ++i) {
    const double lam = es.lambdas[i];
    auto ce = char_v<double>(-lam, params, false);
    auto dm = pcf<double>(lam, -params.beta);
    auto dp = pcf<double>(lam / params.eta, params.beta / se);
    SpectralTerm t;
    t.lambda = lam;
    t.log_delta_scale = ce.log_scale;
    t.delta_mantissa = ce.dv_dtheta;
    t.delta_star = ce.dv_unscaled();
    const double lk = log_abs(dm) + log_abs(dp) - ce.log_scale - std::log(std::abs(ce.dv_dtheta));
    const double sk = ((dm.value > 0) == (dp.value > 0)) == (ce.dv_dtheta > 0) ? 1.0 : -1.0;
    t.k = sk * std::exp(lk);
    terms_.push_back(t);
    log_norm_minus_.push_back(log_abs(dm));
    sign_norm_minus_.push_back(dm.value > 0 ? 1.0 : -1.0);
    log_norm_plus_.push_back(log_abs(dp));
    sign_norm_plus_.push_back(dp.value > 0 ? 1.0 : -1.0);
  }
}

namespace {

struct LogSigned {
  double sign;
  double log;
};

}  // namespace

// k_n * ratio(x0) * ratio(x) with ratio = psi / sqrt(k).
double SpectralExpansion::term_product(std::size_t i, double x, double x0) const {
  const double lam = terms_[i].lambda;
  const double eta = params_.eta, b = params_.beta, se = std::sqrt(eta);
  auto ratio = [&](double y) -> LogSigned {
    if (y > 0) {
      auto d = pcf<double>(lam / eta, (eta * y + b) / se);
      return {(d.value > 0 ? 1.0 : -1.0) * sign_norm_plus_[i], log_abs(d) - log_norm_plus_[i]};
    }
    auto d = pcf<double>(lam, -y - b);
    return {(d.value > 0 ? 1.0 : -1.0) * sign_norm_minus_[i], log_abs(d) - log_norm_minus_[i]};
  };
  LogSigned a = ratio(x0), c = ratio(x);
  const double k = terms_[i].k;
  return a.sign * c.sign * (k > 0 ? 1.0 : -1.0) * std::exp(a.log + c.log + std::log(std::abs(k)));
}

double SpectralExpansion::psi(int n, double x) const {
  if (n < 1 || n > static_cast<int>(terms_.size())) throw DomainError("psi: index out of range");
  const std::size_t i = static_cast<std::size_t>(n - 1);
  const double k = terms_[i].k;
  if (!(k > 0)) throw CapabilityError("psi: k_n is not positive");
  const double lam = terms_[i].lambda;
  const double eta = params_.eta, b = params_.beta, se = std::sqrt(eta);
  if (x > 0) {
    auto d = pcf<double>(lam / eta, (eta * x + b) / se);
    return std::sqrt(k) * sign_norm_plus_[i] * expand(d.value, d.log_scale - log_norm_plus_[i]);
  }
  auto d = pcf<double>(lam, -x - b);
  return std::sqrt(k) * sign_norm_minus_[i] * expand(d.value, d.log_scale - log_norm_minus_[i]);
}

SpectralValue SpectralExpansion::density(double x, double x0, double t) const {
  check_params(x, x0, t);
  if (!(t > 0)) throw DomainError("spectral_density: t must be > 0");
  SpectralValue out;
  const double eta = params_.eta, b = params_.beta;
  auto q = [eta](double y) { return y > 0 ? eta * y * y : y * y; };
  // e^{beta(x0-x)/2} e^{(q(x0)-q(x))/4}
  const double lpre = 0.5 * b * (x0 - x) + 0.25 * (q(x0) - q(x));
  double sum = 0, last_coef = 0;
  std::size_t i = 0;
  for (; i < terms_.size(); ++i) {
    const double coef = term_product(i, x, x0) * std::exp(lpre);
    sum += coef * std::exp(-terms_[i].lambda * t);
    last_coef = std::abs(coef);
    const double next = i + 1 < terms_.size() ? terms_[i + 1].lambda : next_lambda_;
    if (last_coef * std::exp(-next * t) < 1e-12) {
      ++i;
      break;
    }
  }
  out.terms_used = static_cast<int>(i);
  const double next = i < terms_.size() ? terms_[i].lambda : next_lambda_;
  const double last = terms_.empty() ? 0 : terms_[i - 1].lambda;
  const double gapq = std::max(next - last, 1e-3);
  out.tail_bound = last_coef * std::exp(-next * t) / (1 - std::exp(-gapq * t));
  out.transient = sum;
  out.value = SteadyDensity(params_)(x) + sum;
  if (t < kSmallTimeWarning)
    out.warning = "t < 0.05: spectral expansion converges slowly; tail bound is heuristic";
  return out;
}

SpectralValue spectral_density(double x, double x0, double t, const Params& params, int n_terms) {
  if (!(t > 0)) throw DomainError("spectral_density: t must be > 0");
  return SpectralExpansion(params, n_terms).density(x, x0, t);
}

double orthogonality_check(const Params& params, int n, int m) {
  if (n < 1 || m < 1) throw DomainError("orthogonality_check: indices must be >= 1");
  SpectralExpansion se(params, std::max(n, m));
  if (static_cast<int>(se.terms().size()) < std::max(n, m))
    throw RootNotFound("orthogonality_check: not enough eigenvalues", 0, 0);
  const double lam = std::max(se.terms()[n - 1].lambda, se.terms()[m - 1].lambda);
  const double b = params.beta, eta = params.eta, sq = std::sqrt(eta);
  // Gaussian envelopes exp(-(x+b)^2/2) and exp(-(eta x + b)^2/(2 eta)), with polynomial growth allowance.
  const double reach = 9.0 + 2 * std::sqrt(lam + 1) + 2 * std::sqrt(lam / eta + 1);
  const double left = std::min(-1.0, -b - reach);
  const double right = std::max(1.0, (sq * reach - b) / eta);
  auto f = [&](double x) { return se.psi(n, x) * se.psi(m, x); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0;
  double lo = GK::integrate(f, left, 0.0, 15, 1e-13, &err);
  double hi = GK::integrate(f, 0.0, right, 15, 1e-13, &err);
  return lo + hi;
}

double hw_laplace_limit(double x, double theta, double x0, double beta) {
  if (!std::isfinite(x) || !std::isfinite(theta) || !std::isfinite(x0) || !std::isfinite(beta))
    throw DomainError("hw_laplace_limit: non-finite argument");
  if (!(x > 0) || !(x0 < 0)) throw DomainError("hw_laplace_limit: requires x > 0 and x0 < 0");
  const double disc = theta + beta * beta / 4;
  if (!(disc > 0)) throw DomainError("hw_laplace_limit: theta on the branch cut theta <= -beta^2/4");
  const double s = std::sqrt(disc);
  auto n = pcf<double>(-theta, -beta - x0);
  auto d = pcf<double>(-theta, -beta);
  const double den = s - d.dz / d.value;
  if (den == 0) throw PoleError("hw_laplace_limit: pole", theta);
  const double l = 0.25 * x0 * x0 + 0.5 * beta * x0 + n.log_scale - d.log_scale - 0.5 * x * beta - x * s;
  return expand(n.value / d.value / den, l);
}

RouRatios rou_limit_check(double theta, double beta, double eta_large) {
  if (!std::isfinite(theta) || !std::isfinite(beta)) throw DomainError("rou_limit_check: non-finite argument");
  if (!(eta_large >= 100)) throw DomainError("rou_limit_check: eta_large must be >= 100");
  if (theta == 0) {
    // Removable singularity; symmetric average of the neighbouring ratios.
    const double h = 1e-5;
    RouRatios a = rou_limit_check(-h, beta, eta_large), c = rou_limit_check(h, beta, eta_large);
    return {0.5 * (a.v_ratio + c.v_ratio), 0.5 * (a.m_ratio + c.m_ratio)};
  }
  Params p{beta, eta_large};
  auto ce = char_v<double>(theta, p, true);
  auto lm = pcf<double>(-1 - theta, -beta);
  auto lp = pcf<double>(-1 - theta, beta);
  return {ce.v / (theta * lm.value) * std::exp(ce.log_scale - lm.log_scale),
          ce.m / (theta * lp.value) * std::exp(ce.log_scale - lp.log_scale)};
}

}  // namespace erlang_spectral
