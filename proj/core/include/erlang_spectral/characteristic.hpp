#pragma once

#include <string>
#include <vector>

#include "erlang_spectral/precision.hpp"
#include "erlang_spectral/specfun.hpp"

namespace erlang_spectral {

template <class Real>
struct ModelParams {
  Real beta{};
  Real eta{1};

  void validate() const {
    if (!(boost::math::isfinite)(beta)) throw DomainError("beta must be finite");
    if (!(boost::math::isfinite)(eta) || !(eta > 0)) throw DomainError("eta must be finite and > 0");
  }
};

using Params = ModelParams<double>;

// V(theta), M(theta) and dV/dtheta, stored relative to exp(log_scale).
template <class Real>
struct CharEval {
  Real theta{};
  Real v{};
  Real m{};
  Real dv_dtheta{};
  Real log_scale{};

  Real v_unscaled() const {
    using std::exp;
    return v * exp(log_scale);
  }
  Real m_unscaled() const {
    using std::exp;
    return m * exp(log_scale);
  }
  Real dv_unscaled() const {
    using std::exp;
    return dv_dtheta * exp(log_scale);
  }
};

template <class Real>
CharEval<Real> char_v(Real theta, const ModelParams<Real>& params, bool with_m = true);

// Double-valued front end that evaluates in the requested tier.
CharEval<double> char_v(double theta, const Params& params, Precision precision);

// Zero-set equivalent of V at beta = 0, written with reciprocal Gammas.
template <class Real>
Real char_v_beta0(Real theta, Real eta);

// Closed form of dV/dtheta at theta = 0 (unscaled).
double dv_dtheta_at_zero(const Params& params);

struct GapResult {
  double r{};
  // r - eta, resolved separately so that exponentially small values keep
  // their digits (beta < 0, small eta).
  double r_minus_eta{};
  CharEval<double> details{};
  Precision precision_used{Precision::Double};
  int scan_points{};
  double scan_lo{}, scan_hi{};
  bool near_eta_formulation{};
};

GapResult spectral_gap(const Params& params, Precision precision = Precision::Auto);

struct EigenSet {
  Params params{};
  std::vector<double> lambdas;
  std::vector<double> v_theta_derivs;  // unscaled dV/dtheta at theta = -lambda
  bool partial{false};
  std::string diagnostic;
};

EigenSet eigenvalues(const Params& params, int count);

// sgn(dr/dbeta) from a central difference of spectral_gap in beta.
int gap_beta_derivative_sign(const Params& params, double step = 1e-4);

}  // namespace erlang_spectral
