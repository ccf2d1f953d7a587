#include "erlang_spectral/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "policy.hpp"

namespace erlang_spectral {

template <class Real>
CharEval<Real> char_v(Real theta, const ModelParams<Real>& params, bool with_m) {
  using std::exp;
  using std::sqrt;
  params.validate();
  if (!(boost::math::isfinite)(theta)) throw DomainError("char_v: non-finite theta");
  const Real eta = params.eta, beta = params.beta;
  const Real se = sqrt(eta);
  // A = D_{-theta}(-beta), B = D_{-theta/eta}(beta/sqrt(eta)), C = D_{-theta}(beta)
  PcfEval<Real> A = pcf<Real>(-theta, -beta);
  PcfEval<Real> B = pcf<Real>(-theta / eta, beta / se);
  PcfEval<Real> C{};
  if (with_m) C = pcf<Real>(-theta, beta);
  const Real top = with_m ? std::max(A.log_scale, C.log_scale) : A.log_scale;
  const Real fa = exp(A.log_scale - top);
  const Real fc = with_m ? exp(C.log_scale - top) : Real(0);

  CharEval<Real> out;
  out.theta = theta;
  out.log_scale = B.log_scale + top;
  out.v = (-se * A.value * B.dz - A.dz * B.value) * fa;
  out.dv_dtheta =
      (se * A.dp * B.dz + A.value * B.dzdp / se + A.dzdp * B.value + A.dz * B.dp / eta) * fa;
  out.m = with_m ? (se * C.value * B.dz - C.dz * B.value) * fc : Real(0);
  return out;
}

template CharEval<double> char_v<double>(double, const ModelParams<double>&, bool);
template CharEval<ext_float> char_v<ext_float>(ext_float, const ModelParams<ext_float>&, bool);

CharEval<double> char_v(double theta, const Params& params, Precision precision) {
  if (precision != Precision::Extended) return char_v<double>(theta, params, true);
  ModelParams<ext_float> px{ext_float(params.beta), ext_float(params.eta)};
  auto e = char_v<ext_float>(ext_float(theta), px, true);
  // Keep the mantissas O(1) before narrowing.
  using std::abs;
  using std::log;
  ext_float big = std::max({abs(e.v), abs(e.m), abs(e.dv_dtheta)});
  if (big > 0) {
    e.v /= big;
    e.m /= big;
    e.dv_dtheta /= big;
    e.log_scale += log(big);
  }
  return {theta, static_cast<double>(e.v), static_cast<double>(e.m), static_cast<double>(e.dv_dtheta),
          static_cast<double>(e.log_scale)};
}

template <class Real>
Real char_v_beta0(Real theta, Real eta) {
  using std::sqrt;
  if (!(eta > 0)) throw DomainError("char_v_beta0: eta must be > 0");
  return sqrt(eta) * rgamma<Real>(theta / (2 * eta)) * rgamma<Real>((1 + theta) / 2) +
         rgamma<Real>(theta / 2) * rgamma<Real>(Real(0.5) + theta / (2 * eta));
}

template double char_v_beta0<double>(double, double);
template ext_float char_v_beta0<ext_float>(ext_float, ext_float);

double dv_dtheta_at_zero(const Params& params) {
  params.validate();
  const double b = params.beta, eta = params.eta;
  // int_a^inf exp(-x^2/2) dx = sqrt(pi/2) erfc(a/sqrt 2)
  auto tail = [](double a) { return std::sqrt(M_PI / 2) * boost::math::erfc(a / std::sqrt(2.0)); };
  double q = b * b / 4 - b * b / (4 * eta);
  return std::exp(q) * tail(-b) + std::exp(-q) * tail(b / std::sqrt(eta)) / std::sqrt(eta);
}

namespace {

int sign_of(double x) { return (x > 0) - (x < 0); }

struct AbsTol {
  double tol;
  bool operator()(double a, double b) const { return std::abs(b - a) <= tol; }
};

template <class Real>
Real v_mantissa(Real theta, const ModelParams<Real>& p) {
  return char_v<Real>(theta, p, false).v;
}

// Refine the gap inside [lam_lo, lam_hi] in the variable lambda.
template <class Real>
Real refine_lambda(const Params& params, double lam_lo, double lam_hi) {
  ModelParams<Real> p{Real(params.beta), Real(params.eta)};
  auto f = [&](Real lam) { return v_mantissa<Real>(-lam, p); };
  std::uintmax_t iters = 200;
  if constexpr (std::is_same_v<Real, double>) {
    auto r = boost::math::tools::toms748_solve(f, lam_lo, lam_hi, AbsTol{1e-13}, iters,
                                               detail::quiet_policy());
    return (r.first + r.second) / 2;
  } else {
    auto r = boost::math::tools::toms748_solve(f, Real(lam_lo), Real(lam_hi),
                                               boost::math::tools::eps_tolerance<Real>(100), iters,
                                               detail::quiet_policy());
    return (r.first + r.second) / 2;
  }
}

// Refine in eps with theta = -eta (1 + eps); returns eps.
template <class Real>
Real refine_eps(const Params& params, Real eps_lo, Real eps_hi) {
  ModelParams<Real> p{Real(params.beta), Real(params.eta)};
  auto f = [&](Real e) { return v_mantissa<Real>(-p.eta * (1 + e), p); };
  Real flo = f(eps_lo), fhi = f(eps_hi);
  if (flo == 0) return eps_lo;
  if (fhi == 0) return eps_hi;
  if ((flo > 0) == (fhi > 0)) throw RootNotFound("near-eta bracket lost its sign change", 0, 0);
  std::uintmax_t iters = 300;
  int bits = std::numeric_limits<Real>::digits - 8;
  auto r = boost::math::tools::toms748_solve(f, eps_lo, eps_hi, flo, fhi,
                                             boost::math::tools::eps_tolerance<Real>(bits), iters,
                                             detail::quiet_policy());
  return (r.first + r.second) / 2;
}

}  // namespace

GapResult spectral_gap(const Params& params, Precision precision) {
  params.validate();
  const double delta = 0.05;
  const double eta = params.eta, beta = params.beta;
  GapResult res;
  res.scan_lo = std::min(1.0, eta) * (1 - delta);
  res.scan_hi = std::max(1.0, eta) * (1 + delta);
  res.near_eta_formulation = beta < 0 && eta < 0.25;
  const int max_points = (beta < 0 && eta < 0.2) ? 32000 : 2000;

  // Scan lambda upward from the lower bracket end; the first sign change of
  // V(-lambda) is the gap (theta = 0 lies outside the scanned interval).
  double br_lo = 0, br_hi = 0;
  bool found = false;
  for (int n = 2000; n <= max_points && !found; n *= 2) {
    res.scan_points = n;
    const double step = (res.scan_hi - res.scan_lo) / (n - 1);
    double prev_lam = res.scan_lo;
    int prev_sign = sign_of(v_mantissa<double>(-prev_lam, params));
    for (int i = 1; i < n; ++i) {
      double lam = res.scan_lo + i * step;
      int s = sign_of(v_mantissa<double>(-lam, params));
      if (prev_sign == 0) {
        br_lo = br_hi = prev_lam;
        found = true;
        break;
      }
      if (s != prev_sign) {
        br_lo = prev_lam;
        br_hi = lam;
        found = true;
        break;
      }
      prev_lam = lam;
      prev_sign = s;
    }
  }
  if (!found)
    throw RootNotFound("spectral_gap: root at bracket edge (no sign change of V over the scanned interval)",
                       res.scan_lo, res.scan_hi);

  const bool want_ext = precision == Precision::Extended;
  if (res.near_eta_formulation && br_lo < br_hi) {
    double e_lo = br_lo / eta - 1, e_hi = br_hi / eta - 1;
    double e = refine_eps<double>(params, e_lo, e_hi);
    res.precision_used = Precision::Double;
    bool escalate = want_ext || (precision == Precision::Auto && std::abs(e) < 1e-3);
    if (escalate) {
      ext_float ex;
      // Tight bracket around the double result first; fall back to the scan bracket.
      try {
        ext_float w = std::max(std::abs(e) * 1e-6, 1e-300);
        ex = refine_eps<ext_float>(params, ext_float(e) - w, ext_float(e) + w);
      } catch (const RootNotFound&) {
        ex = refine_eps<ext_float>(params, ext_float(e_lo), ext_float(e_hi));
      }
      e = static_cast<double>(ex);
      res.precision_used = Precision::Extended;
    }
    res.r_minus_eta = eta * e;
    res.r = eta + res.r_minus_eta;
  } else {
    double r = br_lo;
    if (br_lo < br_hi) {
      r = refine_lambda<double>(params, br_lo, br_hi);
      res.precision_used = Precision::Double;
      if (want_ext) {
        double w = 1e-10;
        try {
          r = static_cast<double>(refine_lambda<ext_float>(params, r - w, r + w));
        } catch (const std::exception&) {
          r = static_cast<double>(refine_lambda<ext_float>(params, br_lo, br_hi));
        }
        res.precision_used = Precision::Extended;
      }
    }
    res.r = r;
    res.r_minus_eta = r - eta;
  }
  res.details = char_v(-res.r, params, res.precision_used);
  return res;
}

EigenSet eigenvalues(const Params& params, int count) {
  params.validate();
  if (count < 1) throw DomainError("eigenvalues: count must be >= 1");
  EigenSet out;
  out.params = params;
  const double lo = std::min(1.0, params.eta) * 0.95;
  const double step = std::min(1.0, params.eta) / 40;
  const double ceiling = lo + 2.0 * std::max(1.0, params.eta) * (count + 2) + 1.0;
  double prev = lo;
  int prev_sign = sign_of(v_mantissa<double>(-prev, params));
  while (static_cast<int>(out.lambdas.size()) < count) {
    double lam = prev + step;
    if (lam > ceiling) {
      out.partial = true;
      out.diagnostic = "eigenvalues: scan ceiling " + std::to_string(ceiling) + " reached after " +
                       std::to_string(out.lambdas.size()) + " roots";
      break;
    }
    int s = sign_of(v_mantissa<double>(-lam, params));
    if (s != prev_sign || s == 0) {
      double root = (s == 0) ? lam : refine_lambda<double>(params, prev, lam);
      auto ce = char_v<double>(-root, params, false);
      out.lambdas.push_back(root);
      out.v_theta_derivs.push_back(ce.dv_unscaled());
      if (s == 0) {
        lam += step / 2;
        s = sign_of(v_mantissa<double>(-lam, params));
      }
    }
    prev = lam;
    prev_sign = s;
  }
  return out;
}

int gap_beta_derivative_sign(const Params& params, double step) {
  params.validate();
  if (params.eta == 1.0) return 0;
  Params up = params, dn = params;
  up.beta += step;
  dn.beta -= step;
  GapResult gu = spectral_gap(up), gd = spectral_gap(dn);
  double diff = (gu.near_eta_formulation && gd.near_eta_formulation) ? gu.r_minus_eta - gd.r_minus_eta
                                                                      : gu.r - gd.r;
  double scale = std::abs(gu.r_minus_eta) + std::abs(gd.r_minus_eta) + 1e-300;
  if (std::abs(diff) <= 1e-12 * std::max(1.0, gu.r) && std::abs(diff) <= 1e-9 * scale) return 0;
  return sign_of(diff);
}

}  // namespace erlang_spectral
