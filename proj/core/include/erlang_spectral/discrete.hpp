#pragma once

#include <string>
#include <vector>

#include "erlang_spectral/characteristic.hpp"

namespace erlang_spectral {

struct DiscreteParams {
  int m{1};         // servers (service rate 1)
  double rho{1};    // offered load
  double eta{1};    // abandonment ratio

  void validate() const;
  // rho = m - beta sqrt(m)
  static DiscreteParams halfin_whitt(int m, double beta, double eta);
};

// mantissa * exp(log_scale)
struct ScaledValue {
  double mantissa{};
  double log_scale{};
  double value() const;
};

struct ContourEval {
  int n{};
  double theta{};
  double value{};
  double quadrature_err{};  // relative
};

// Finite-sum evaluation; extended precision internally for n > 50.
ScaledValue f_n_scaled(double theta, double rho, int n);
double f_n(double theta, double rho, int n);

// Loop integral around the cut (-inf, 1], evaluated on a left-opening parabola.
ScaledValue h_n_scaled(double theta, const DiscreteParams& dp, int n, double* rel_err = nullptr);
ContourEval h_n(double theta, const DiscreteParams& dp, int n);

struct DeltaEval {
  double mantissa{};
  double log_scale{};
  double quadrature_err{};
  double value() const;
};

// F_m H_{m-1} - H_m F_{m-1} with the common exponential factored out.
DeltaEval delta_det(double theta, const DiscreteParams& dp);

struct DiscreteGap {
  double gap{};
  double bracket_lo{}, bracket_hi{};
  int scan_points{};
};

DiscreteGap discrete_gap(const DiscreteParams& dp);

struct GeneratorGap {
  double gap{};
  double ground{};  // smallest eigenvalue of -Q (0 up to rounding)
  int truncation{};
};

// Second-smallest eigenvalue of -Q for the truncated birth-death chain.
// truncation <= 0 picks the recommended starting size.
GeneratorGap generator_gap(const DiscreteParams& dp, int truncation = 0);

struct ConvergenceRow {
  int m{};
  double discrete{};
  double diffusion{};
  double difference{};
};

std::vector<ConvergenceRow> convergence_study(double beta, double eta, const std::vector<int>& m_list);

}  // namespace erlang_spectral
