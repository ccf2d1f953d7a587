#pragma once

#include <cmath>
#include <utility>

#include "erlang_spectral/precision.hpp"

namespace erlang_spectral {

// D_p(z) together with its z-, p- and mixed derivatives.  All fields are
// stored relative to exp(log_scale) so that magnitudes far beyond the range
// of double (p ~ 1e3) stay representable.
template <class Real>
struct PcfEval {
  Real value{};
  Real dz{};
  Real dp{};
  Real dzdp{};
  Real abs_err_est{};
  Real log_scale{};

  // Fields multiplied out; may overflow to +-inf.
  PcfEval unscaled() const {
    using std::exp;
    Real s = exp(log_scale);
    return {value * s, dz * s, dp * s, dzdp * s, abs_err_est * s, Real(0)};
  }
};

template <class Real>
PcfEval<Real> pcf(Real p, Real z);

// Plain-double conveniences (unscaled).
double pcf_d(double p, double z);
double pcf_d_dz(double p, double z);
double pcf_d_dp(double p, double z);
PcfEval<double> pcf_eval(double p, double z);

template <class Real>
Real gamma_fn(Real x);
// 1/Gamma(x); exact zero at x = 0, -1, -2, ...
template <class Real>
Real rgamma(Real x);
template <class Real>
Real digamma(Real x);

template <class Real>
struct AiryPair {
  Real ai;
  Real aip;
};
template <class Real>
AiryPair<Real> airy_ai(Real x);

enum class AiryZeroKind { OfAi, OfAiPrime };
// n-th (0-based) negative zero, a_n or b_n, in decreasing order.
template <class Real>
Real airy_zero(AiryZeroKind kind, int n);

// Probabilists' Hermite polynomial He_n(z).
template <class Real>
Real hermite_he(int n, Real z);

struct UniformAiry {
  double d_approx;
  double dprime_approx;
  double delta;
};
// Airy-type approximation of D_{-A}(B) and D'_{-A}(B) near the turning
// point, A = -B^2/4 + (B/2)^{2/3} delta, with the first correction term.
UniformAiry pcf_uniform_airy(double A, double B);

}  // namespace erlang_spectral
