#pragma once

#include <optional>
#include <string>
#include <vector>

#include "erlang_spectral/characteristic.hpp"

namespace erlang_spectral {

enum class Regime { NegBeta, SmallBeta, MidBeta, NearBetaStar, LargeBeta };

const char* regime_name(Regime r);

struct Term {
  std::string name;
  double value{};
};

struct RegimeEstimate {
  Regime regime{};
  double value{};  // sum of terms
  std::vector<Term> terms;
  std::string validity_note;
};

enum class BranchKind { R0, RofGamma, ChiOfW };

struct BranchPoint {
  BranchKind kind{};
  double parameter{};
  double root{};
};

// Multipliers of sqrt(eta) and eta^{1/3} at the regime boundaries.
inline constexpr double kSmallBetaWidth = 3.0;
inline constexpr double kNearStarWidth = 3.0;

// Smallest positive root of beta -> D'_{beta^2/4}(-beta).
double beta_star();

// Largest zeros of Ai and Ai'.
double airy_a0();
double airy_b0();

// D'_p(-beta) - sqrt(beta^2/4 - p) D_p(-beta), up to a positive scale.
double v_tilde_scaled(double p, double beta);

// Minimal positive root of v_tilde; empty for beta < beta_star.
std::optional<double> r0_of_beta(double beta);

double correction_A(double beta);

double R_of_gamma(double gamma);

double L_constant();

// Maximal chi with Ai'(chi) + (2/beta_star)^{1/3} L W Ai(chi) = 0.
double chi_of_W(double W);

RegimeEstimate gap_neg_beta(const Params& params);
RegimeEstimate gap_small_beta(const Params& params);
RegimeEstimate gap_mid_beta(const Params& params);
RegimeEstimate gap_near_beta_star(const Params& params);
RegimeEstimate gap_large_beta(const Params& params);

Regime regime_of(const Params& params);
RegimeEstimate regime_select(const Params& params);

}  // namespace erlang_spectral
