#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

namespace erlang_spectral {

// Adaptive Gauss-Legendre for small vector-valued integrands that share one
// expensive kernel (e.g. D, dD/dz, dD/dp evaluated from a single exp()).
// Error per panel is estimated by comparing the panel rule with the sum over
// its two halves; each component is judged against its own L1 norm.
template <class Real, std::size_t K>
class VectorGaussLegendre {
 public:
  using Vec = std::array<Real, K>;
  static constexpr unsigned kPoints = std::numeric_limits<Real>::digits > 60 ? 30 : 20;

  struct Result {
    Vec value{};
    Vec l1{};
    Real abs_err{};  // component 0
    int evaluations{};
  };

  template <class F>
  static Result integrate(F&& f, Real a, Real b, int initial_panels, Real rel_tol, int max_depth = 14) {
    Result res;
    constexpr int kMaxPanels = 64;
    int panels = initial_panels > kMaxPanels ? kMaxPanels : (initial_panels < 1 ? 1 : initial_panels);
    std::array<Vec, kMaxPanels> wholes{};
    Real width = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
      Vec l1{};
      wholes[i] = rule(f, a + i * width, a + (i + 1) * width, l1, res.evaluations);
      for (std::size_t k = 0; k < K; ++k) res.l1[k] += l1[k];
    }
    Vec tol{};
    for (std::size_t k = 0; k < K; ++k) tol[k] = rel_tol * (res.l1[k] > 0 ? res.l1[k] : Real(1));
    for (int i = 0; i < panels; ++i) {
      refine(f, a + i * width, a + (i + 1) * width, wholes[i], tol, b - a, max_depth, res);
    }
    return res;
  }

 private:
  template <class F>
  static Vec rule(F& f, Real a, Real b, Vec& l1, int& evals) {
    using std::abs;
    const auto& x = boost::math::quadrature::gauss<Real, kPoints>::abscissa();
    const auto& w = boost::math::quadrature::gauss<Real, kPoints>::weights();
    Real half = (b - a) / 2, mid = (a + b) / 2;
    Vec acc{};
    l1 = Vec{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      Vec fp = f(mid + half * x[i]);
      Vec fm = f(mid - half * x[i]);
      evals += 2;
      for (std::size_t k = 0; k < K; ++k) {
        acc[k] += w[i] * (fp[k] + fm[k]);
        l1[k] += w[i] * (abs(fp[k]) + abs(fm[k]));
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      acc[k] *= half;
      l1[k] *= half;
    }
    return acc;
  }

  template <class F>
  static void refine(F& f, Real a, Real b, const Vec& whole, const Vec& tol, Real total_width, int depth,
                     Result& res) {
    using std::abs;
    const Real floor = 64 * std::numeric_limits<Real>::epsilon();
    Real m = (a + b) / 2;
    Vec l1a{}, l1b{};
    Vec left = rule(f, a, m, l1a, res.evaluations);
    Vec right = rule(f, m, b, l1b, res.evaluations);
    bool ok = true;
    Real frac = (b - a) / total_width;
    for (std::size_t k = 0; k < K; ++k) {
      Real d = abs(whole[k] - left[k] - right[k]);
      Real allowed = tol[k] * frac;
      Real noise = floor * (l1a[k] + l1b[k]);
      if (d > allowed && d > noise) ok = false;
    }
    if (ok || depth <= 0) {
      for (std::size_t k = 0; k < K; ++k) res.value[k] += left[k] + right[k];
      res.abs_err += abs(whole[0] - left[0] - right[0]);
      return;
    }
    refine(f, a, m, left, tol, total_width, depth - 1, res);
    refine(f, m, b, right, tol, total_width, depth - 1, res);
  }
};

}  // namespace erlang_spectral
