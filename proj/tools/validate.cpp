#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <tuple>

#include "erlang_spectral/asymptotic.hpp"
#include "erlang_spectral/characteristic.hpp"
#include "erlang_spectral/discrete.hpp"
#include "erlang_spectral/specfun.hpp"
#include "erlang_spectral/transient.hpp"
#include "parallel.hpp"
#include "tables.hpp"

namespace erlang_spectral::cli {

namespace {

using Group = std::function<std::vector<CheckResult>()>;

CheckResult within(std::string name, double value, double expected, double tol) {
  const bool pass = std::isfinite(value) && std::abs(value - expected) <= tol;
  return {std::move(name), value, expected, tol, pass};
}

// Largest scaled residual of a three-term identity a + b + c = 0 on the grid.
double recurrence_residual(bool lower) {
  double worst = 0;
  for (double p = -5; p <= 10 + 1e-9; p += 0.5) {
    for (double z = -6; z <= 6 + 1e-9; z += 0.5) {
      const double d = pcf_d(p, z), dz = pcf_d_dz(p, z);
      const double other = lower ? -p * pcf_d(p - 1, z) : pcf_d(p + 1, z);
      const double half = lower ? z / 2 * d : -z / 2 * d;
      const double res = std::abs(dz + half + other);
      const double scale = std::abs(dz) + std::abs(half) + std::abs(other);
      if (scale > 0) worst = std::max(worst, res / scale);
    }
  }
  return worst;
}

std::vector<CheckResult> specfun_checks() {
  std::vector<CheckResult> out;
  out.push_back(within("pcf.recurrence_lower", recurrence_residual(true), 0, 1e-9));
  out.push_back(within("pcf.recurrence_upper", recurrence_residual(false), 0, 1e-9));

  double worst_w = 0, worst_w0 = 0;
  for (double p = -5; p <= 10 + 1e-9; p += 0.25) {
    for (double z = -4; z <= 4 + 1e-9; z += 0.5) {
      const double lhs = pcf_d(p, z) * pcf_d_dz(p, -z) + pcf_d_dz(p, z) * pcf_d(p, -z);
      if (p >= 0 && std::abs(p - std::round(p)) < 1e-12) {
        worst_w0 = std::max(worst_w0, std::abs(lhs));
      } else if (p < 0 || std::abs(p - std::round(p)) > 1e-3) {
        const double rhs = -std::sqrt(2 * M_PI) * rgamma(-p);
        worst_w = std::max(worst_w, std::abs(lhs - rhs) / std::abs(rhs));
      }
    }
  }
  out.push_back(within("pcf.wronskian", worst_w, 0, 1e-9));
  out.push_back(within("pcf.wronskian_integer_order", worst_w0, 0, 1e-10));

  double worst0 = 0;
  for (double p : {-3.0, -1.5, 0.5, 2.5}) {
    const double d0 = std::pow(2.0, p / 2) * std::sqrt(M_PI) * rgamma((1 - p) / 2);
    const double d1 = -std::pow(2.0, (p + 1) / 2) * std::sqrt(M_PI) * rgamma(-p / 2);
    worst0 = std::max({worst0, std::abs(pcf_d(p, 0) - d0) / std::abs(d0), std::abs(pcf_d_dz(p, 0) - d1) / std::abs(d1)});
  }
  out.push_back(within("pcf.values_at_zero", worst0, 0, 1e-12));
  return out;
}

std::vector<CheckResult> symmetry_checks() {
  std::vector<CheckResult> out;
  double worst = 0;
  for (double b : {-1.5, 0.0, 0.8}) {
    for (double e : {0.3, 2.0}) {
      for (double th : {-0.4, 0.6, 1.7}) {
        const double lhs = char_v(th, Params{b, e}).v_unscaled();
        const double rhs = std::sqrt(e) * char_v(th / e, Params{-b / std::sqrt(e), 1 / e}).v_unscaled();
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
      }
    }
  }
  out.push_back(within("char.symmetry_v", worst, 0, 1e-9));

  double worst_r = 0;
  for (double b : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    for (double e : {0.25, 0.5, 2.0, 4.0}) {
      const double r1 = spectral_gap(Params{b, e}).r;
      const double r2 = e * spectral_gap(Params{-b / std::sqrt(e), 1 / e}).r;
      worst_r = std::max(worst_r, std::abs(r1 - r2));
    }
  }
  out.push_back(within("gap.symmetry", worst_r, 0, 1e-8));

  double worst_v0 = 0;
  for (double b : {-1.0, 0.5, 2.0})
    for (double e : {0.2, 1.0, 3.0}) worst_v0 = std::max(worst_v0, std::abs(char_v(0.0, Params{b, e}).v_unscaled()));
  out.push_back(within("char.v_at_zero", worst_v0, 0, 1e-10));
  return out;
}

std::vector<CheckResult> eta_one_checks() {
  std::vector<CheckResult> out;
  double worst_r = 0;
  for (double b : {-1.5, 0.0, 2.0}) worst_r = std::max(worst_r, std::abs(spectral_gap(Params{b, 1.0}).r - 1));
  out.push_back(within("eta1.gap", worst_r, 0, 1e-10));

  const EigenSet es = eigenvalues(Params{0.7, 1.0}, 4);
  double worst_l = es.lambdas.size() == 4 ? 0 : INFINITY;
  for (std::size_t i = 0; i < es.lambdas.size(); ++i) worst_l = std::max(worst_l, std::abs(es.lambdas[i] - (i + 1.0)));
  out.push_back(within("eta1.eigenvalues", worst_l, 0, 1e-10));

  double worst_v = 0;
  for (double th : {0.5, 1.0, 2.3}) {
    const double v = char_v(th, Params{0.4, 1.0}).v_unscaled();
    const double ref = std::sqrt(2 * M_PI) * rgamma(th);
    worst_v = std::max(worst_v, std::abs(v - ref) / ref);
  }
  out.push_back(within("eta1.v_gamma_form", worst_v, 0, 1e-10));
  return out;
}

std::vector<CheckResult> table_checks(int id) {
  std::vector<CheckResult> out;
  for (const auto& c : tables::reproduce_table(id)) {
    char key[128];
    std::snprintf(key, sizeof key, "table%d.%s.eta=%g", id, c.column.c_str(), c.eta);
    out.push_back(within(key, c.computed, c.published, c.tol));
  }
  return out;
}

std::vector<CheckResult> convergence_checks() {
  auto rows = convergence_study(1.0, 0.5, {100, 400});
  std::vector<CheckResult> out;
  for (const auto& r : rows) out.push_back(within("discrete.gap_m=" + std::to_string(r.m), r.discrete, r.diffusion, 0.05));
  const double ratio = rows[0].difference / rows[1].difference;
  out.push_back(within("discrete.convergence_ratio", ratio, 2.15, 0.85));
  for (auto [m, rho, eta] : {std::tuple{9, 6.0, 0.7}, {1, 0.5, 1.0}, {25, 22.0, 2.0}}) {
    DiscreteParams dp{m, rho, eta};
    char key[96];
    std::snprintf(key, sizeof key, "discrete.oracle_m=%d_rho=%g_eta=%g", m, rho, eta);
    out.push_back(within(key, discrete_gap(dp).gap, generator_gap(dp).gap, 1e-6));
  }
  return out;
}

std::vector<CheckResult> orthogonality_checks() {
  std::vector<CheckResult> out;
  const Params p{0.5, 0.5};
  for (int n = 1; n <= 2; ++n)
    for (int m = 1; m <= 2; ++m)
      out.push_back(within("transient.orthogonality_" + std::to_string(n) + std::to_string(m),
                           orthogonality_check(p, n, m), n == m ? 1.0 : 0.0, 1e-8));
  return out;
}

}  // namespace

std::vector<CheckResult> run_suite(Suite suite) {
  std::vector<Group> groups{specfun_checks, symmetry_checks, eta_one_checks};
  if (suite == Suite::Full) {
    for (int id : tables::table_ids()) groups.push_back([id] { return table_checks(id); });
    groups.push_back(convergence_checks);
    groups.push_back(orthogonality_checks);
  }
  std::vector<std::vector<CheckResult>> slots(groups.size());
  parallel_for(groups.size(), [&](std::size_t i) {
    try {
      slots[i] = groups[i]();
    } catch (const std::exception& e) {
      slots[i] = {{std::string("group_") + std::to_string(i) + ".exception: " + e.what(), NAN, 0, 0, false}};
    }
  });
  std::vector<CheckResult> out;
  for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
  return out;
}

}  // namespace erlang_spectral::cli
