#pragma once

#include <string>
#include <vector>

#include "erlang_spectral/characteristic.hpp"

namespace erlang_spectral {

struct SteadyDensity {
  Params params{};
  double c{};  // normalizing constant

  explicit SteadyDensity(const Params& p);
  double operator()(double x) const;
  double relaxation_time() const;  // 1 / spectral gap
};

double steady_density(double x, const Params& params);

// Laplace transform of the transient density at transform variable theta.
// theta <= 0 requires allow_continuation.
double laplace_density(double x, double x0, double theta, const Params& params, bool allow_continuation = false);

struct SpectralTerm {
  double lambda{};
  double delta_star{};      // dV/dtheta at theta = -lambda (unscaled)
  double k{};               // normalisation constant k_n
  // Internals kept in log-scaled form.
  double log_delta_scale{};
  double delta_mantissa{};
};

struct SpectralValue {
  double value{};
  double transient{};   // value - stationary part
  double tail_bound{};  // heuristic bound on the omitted terms
  int terms_used{};
  std::string warning;
};

// Spectral expansion with eigen-data computed once; evaluation is const and
// thread-safe.
class SpectralExpansion {
 public:
  SpectralExpansion(const Params& params, int n_terms);

  const Params& params() const { return params_; }
  const std::vector<SpectralTerm>& terms() const { return terms_; }
  double next_lambda() const { return next_lambda_; }

  SpectralValue density(double x, double x0, double t) const;

  // psi_n^-(x) for x <= 0, psi_n^+(x) for x > 0 (n is 1-based).
  double psi(int n, double x) const;

 private:
  SpectralValue density_native(double x, double x0, double t) const;
  double term_product(std::size_t i, double x, double x0) const;

  Params params_;
  std::vector<SpectralTerm> terms_;
  double next_lambda_{};
  std::vector<double> log_norm_minus_;  // log |D_lambda(-beta)|
  std::vector<double> sign_norm_minus_;
  std::vector<double> log_norm_plus_;   // log |D_{lambda/eta}(beta/sqrt eta)|
  std::vector<double> sign_norm_plus_;
};

inline constexpr int kMaxSpectralTerms = 200;
inline constexpr double kSmallTimeWarning = 0.05;

SpectralValue spectral_density(double x, double x0, double t, const Params& params, int n_terms);

// Integral of psi_n psi_m over the real line.
double orthogonality_check(const Params& params, int n, int m);

// eta -> 0 limit of the transform (x > 0, x0 < 0).
double hw_laplace_limit(double x, double theta, double x0, double beta);

struct RouRatios {
  double v_ratio{};
  double m_ratio{};
};

// V and M against their eta -> infinity limits theta D_{-1-theta}(-+beta).
RouRatios rou_limit_check(double theta, double beta, double eta_large);

}  // namespace erlang_spectral
