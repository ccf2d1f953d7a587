#include "erlang_spectral/asymptotic.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "policy.hpp"

namespace erlang_spectral {

namespace {

struct AbsTol {
  double tol;
  bool operator()(double a, double b) const { return std::abs(b - a) <= tol; }
};

template <class F>
double solve(F f, double lo, double hi, double tol) {
  std::uintmax_t iters = 300;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, AbsTol{tol}, iters, detail::quiet_policy());
  return (r.first + r.second) / 2;
}

// First sign change of f on [lo, hi] sampled with spacing <= step.
template <class F>
std::optional<std::pair<double, double>> first_bracket(F f, double lo, double hi, double step) {
  int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
  double prev = lo, fprev = f(lo);
  for (int i = 1; i <= n; ++i) {
    double x = (i == n) ? hi : lo + (hi - lo) * i / n;
    double fx = f(x);
    if (fprev == 0) return std::make_pair(prev, prev);
    if ((fx > 0) != (fprev > 0) || fx == 0) return std::make_pair(prev, x);
    prev = x;
    fprev = fx;
  }
  return std::nullopt;
}

double d_prime_at_quarter_square(double beta) {
  return pcf<double>(beta * beta / 4, -beta).dz;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

RegimeEstimate make(Regime r, std::vector<Term> terms, std::string note = {}) {
  RegimeEstimate e;
  e.regime = r;
  e.terms = std::move(terms);
  for (const auto& t : e.terms) e.value += t.value;
  e.validity_note = std::move(note);
  return e;
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::NegBeta: return "NegBeta";
    case Regime::SmallBeta: return "SmallBeta";
    case Regime::MidBeta: return "MidBeta";
    case Regime::NearBetaStar: return "NearBetaStar";
    case Regime::LargeBeta: return "LargeBeta";
  }
  return "?";
}

double beta_star() {
  static const double value = [] {
    return solve(d_prime_at_quarter_square, 1.5, 2.2, 1e-15);
  }();
  return value;
}

double airy_a0() { return airy_zero<double>(AiryZeroKind::OfAi, 0); }
double airy_b0() { return airy_zero<double>(AiryZeroKind::OfAiPrime, 0); }

double v_tilde_scaled(double p, double beta) {
  auto d = pcf<double>(p, -beta);
  return d.dz - std::sqrt(std::max(0.0, beta * beta / 4 - p)) * d.value;
}

std::optional<double> r0_of_beta(double beta) {
  const double bs = beta_star();
  if (!(beta >= bs)) return std::nullopt;
  const double top = beta * beta / 4;
  if (beta == bs) return top;
  auto f = [beta](double p) { return v_tilde_scaled(p, beta); };
  auto br = first_bracket(f, 1e-6, top, top / 400);
  if (!br) return std::nullopt;
  if (br->first == br->second) return br->first;
  return solve(f, br->first, br->second, 1e-13);
}

double correction_A(double beta) {
  if (!(beta > beta_star())) throw DomainError("correction_A: requires beta > beta_star");
  const double r0 = *r0_of_beta(beta);
  const double disc = beta * beta - 4 * r0;
  if (!(disc > 0)) throw DomainError("correction_A: singular at beta_star");
  const double s = std::sqrt(beta * beta / 4 - r0);
  auto d = pcf<double>(r0, -beta);
  // d/dp of D'_p(-beta) - s(p) D_p(-beta); ds/dp = -1/(2s)
  const double dvt = d.dzdp + d.value / (2 * s) - s * d.dp;
  return 0.5 * (beta - std::sqrt(disc)) / disc * d.value / dvt;
}

double R_of_gamma(double gamma) {
  if (!std::isfinite(gamma)) throw DomainError("R_of_gamma: non-finite gamma");
  auto f = [gamma](double R) { return pcf<double>(R - 1, gamma).value; };
  const double lo = 1e-6, hi = gamma * gamma / 4 + 2 * std::abs(airy_a0()) * std::pow(std::abs(gamma) / 2, 2.0 / 3.0) + 10;
  auto br = first_bracket(f, lo, hi, 0.01);
  if (!br) throw RootNotFound("R_of_gamma: no root in scan interval", lo, hi);
  if (br->first == br->second) return br->first;
  return solve(f, br->first, br->second, 1e-12);
}

double L_constant() {
  static const double value = [] {
    const double b = beta_star();
    auto d = pcf<double>(b * b / 4, -b);
    // d/db D'_{b^2/4}(-b) = (b/2) dD'/dp - D''; D'' = (z^2/4 - p - 1/2) D = -D/2 here.
    return ((b / 2) * d.dzdp + 0.5 * d.value) / d.value;
  }();
  return value;
}

double chi_of_W(double W) {
  if (!std::isfinite(W)) throw DomainError("chi_of_W: non-finite W");
  const double b0 = airy_b0();
  if (W == 0) return b0;
  const double w = std::cbrt(2 / beta_star()) * L_constant() * W;
  auto f = [w](double x) {
    auto a = airy_ai(x);
    return a.aip + w * a.ai;
  };
  if (w < 0) return solve(f, airy_a0(), b0, 1e-14);
  // Ai'/Ai decreases on (a0, inf) and behaves like -sqrt(x).
  double hi = std::max(1.0, 2 * w * w);
  while (f(hi) > 0) hi *= 2;
  return solve(f, b0, hi, 1e-14);
}

RegimeEstimate gap_neg_beta(const Params& params) {
  params.validate();
  const double b = params.beta, eta = params.eta;
  if (!(b < 0)) throw DomainError("gap_neg_beta: requires beta < 0");
  double bracket;
  if (b > -20) {
    // int_{-inf}^b exp(-u^2/2) du = sqrt(pi/2) erfc(-b/sqrt 2)
    bracket = 1 + b * std::exp(b * b / 2) * std::sqrt(M_PI / 2) * boost::math::erfc(-b / std::sqrt(2.0));
  } else {
    const double ib2 = 1 / (b * b);
    bracket = ib2 * (1 - 3 * ib2 * (1 - 5 * ib2 * (1 - 7 * ib2)));
  }
  const double corr = -b * std::sqrt(eta) / std::sqrt(2 * M_PI) * std::exp(-b * b / (2 * eta)) * bracket;
  std::string note = eta > 0.5 ? "eta > 0.5: small-eta asymptotics used outside their intended range" : "";
  return make(Regime::NegBeta, {{"eta", eta}, {"exponential_correction", corr}}, note);
}

RegimeEstimate gap_small_beta(const Params& params) {
  params.validate();
  const double gamma = params.beta / std::sqrt(params.eta);
  std::string note;
  if (std::abs(params.beta) > kSmallBetaWidth * std::sqrt(params.eta))
    note = "|beta| exceeds the small-beta width; gamma = " + fmt(gamma);
  return make(Regime::SmallBeta, {{"eta_R", params.eta * R_of_gamma(gamma)}}, note);
}

RegimeEstimate gap_mid_beta(const Params& params) {
  params.validate();
  const double b = params.beta, eta = params.eta;
  if (!(b > 0 && b < beta_star())) throw DomainError("gap_mid_beta: requires 0 < beta < beta_star");
  const double a0 = std::abs(airy_a0());
  auto d = pcf<double>(b * b / 4, -b);
  const double t1 = b * b / 4;
  const double t2 = std::pow(eta, 2.0 / 3.0) * a0 * std::cbrt(b * b / 4);
  const double t3 = 0.5 * eta * (a0 + b * d.value / d.dz);
  return make(Regime::MidBeta, {{"beta^2/4", t1}, {"airy", t2}, {"order_eta", t3}},
              "third term does not match the small-beta regime as beta -> 0");
}

RegimeEstimate gap_near_beta_star(const Params& params) {
  params.validate();
  const double b = params.beta, eta = params.eta, bs = beta_star();
  const double W = (b - bs) / std::cbrt(eta);
  const double t2 = -std::pow(eta, 2.0 / 3.0) * std::cbrt(bs * bs / 4) * chi_of_W(W);
  std::string note = "W = " + fmt(W);
  if (std::abs(W) > kNearStarWidth) note += "; |W| exceeds the transition width";
  return make(Regime::NearBetaStar, {{"beta^2/4", b * b / 4}, {"airy_robin", t2}}, note);
}

RegimeEstimate gap_large_beta(const Params& params) {
  params.validate();
  const double b = params.beta;
  if (!(b > beta_star())) throw DomainError("gap_large_beta: requires beta > beta_star");
  const double r0 = *r0_of_beta(b);
  return make(Regime::LargeBeta, {{"r0", r0}, {"eta_A", params.eta * correction_A(b)}});
}

namespace {

struct RegimeFlags {
  bool neg, small, near, mid;
};

RegimeFlags flags(const Params& p) {
  const double sw = kSmallBetaWidth * std::sqrt(p.eta);
  const double nw = kNearStarWidth * std::cbrt(p.eta);
  const double bs = beta_star();
  return {p.beta <= -sw, std::abs(p.beta) < sw, std::abs(p.beta - bs) < nw, p.beta >= sw && p.beta <= bs - nw};
}

}  // namespace

Regime regime_of(const Params& params) {
  params.validate();
  auto f = flags(params);
  if (f.neg) return Regime::NegBeta;
  if (f.small) return Regime::SmallBeta;
  if (f.near) return Regime::NearBetaStar;
  if (f.mid) return Regime::MidBeta;
  return Regime::LargeBeta;
}

RegimeEstimate regime_select(const Params& params) {
  Regime r = regime_of(params);
  RegimeEstimate e;
  switch (r) {
    case Regime::NegBeta: e = gap_neg_beta(params); break;
    case Regime::SmallBeta: e = gap_small_beta(params); break;
    case Regime::NearBetaStar: e = gap_near_beta_star(params); break;
    case Regime::MidBeta: e = gap_mid_beta(params); break;
    case Regime::LargeBeta: e = gap_large_beta(params); break;
  }
  auto f = flags(params);
  std::string overlap;
  if (f.small && f.near) overlap = "small-beta and near-beta_star windows overlap";
  if (f.small && params.beta > 0 && params.beta < beta_star() && r != Regime::MidBeta)
    overlap += std::string(overlap.empty() ? "" : "; ") + "mid-beta formula also applicable";
  if (!overlap.empty()) e.validity_note += std::string(e.validity_note.empty() ? "" : "; ") + overlap;
  if (params.eta > 0.5)
    e.validity_note += std::string(e.validity_note.empty() ? "" : "; ") + "eta > 0.5: asymptotics are for eta -> 0";
  return e;
}

}  // namespace erlang_spectral
