#pragma once

// Numerical kernel: adaptive Gauss-Kronrod quadrature on finite and
// semi-infinite ranges, Euler-Maclaurin sum-minus-integral (analytic and
// direct), Brent root finding and central differences.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "zpe/errors.hpp"

namespace zpe::numerics {

template <class F>
concept RealFunction = std::regular_invocable<F, double> && std::convertible_to<std::invoke_result_t<F, double>, double>;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 0.0;
  std::size_t max_evaluations = 2'000'000;
  /// Interior points where the integrand has kinks or jumps. Points outside
  /// (a, b) are ignored.
  std::vector<double> breakpoints{};
};

struct Bracket {
  double lo;
  double hi;

  Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw ArgumentError("bracket requires lo < hi");
  }
};

/// Compensated running sum (Neumaier).
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace detail {

// 15-point Kronrod abscissae with the embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error, magnitude;
  friend bool operator<(const Panel& x, const Panel& y) { return x.error < y.error; }
};

template <RealFunction F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_w[7];
  double gauss = fc * gauss_w[3];
  double magnitude = std::abs(fc) * kronrod_w[7];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kronrod_x[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kronrod_w[i] * (f1 + f2);
    magnitude += kronrod_w[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += gauss_w[i / 2] * (f1 + f2);
  }
  const double width = std::abs(half);
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), magnitude * width};
}

}  // namespace detail

/// Globally adaptive bisection with a G7-K15 pair. Converged when the summed
/// panel error drops below max(rel_tol |I|, abs_tol), or when it reaches the
/// round-off floor of the summed panel magnitudes.
template <RealFunction F>
QuadratureResult integrate_finite(const F& f, double a, double b, double rel_tol, const QuadratureOptions& opts = {}) {
  if (!(rel_tol > 0.0)) throw ArgumentError("integrate_finite: rel_tol must be positive");
  if (!(a <= b)) throw ArgumentError("integrate_finite: requires a <= b");
  if (a == b) return {0.0, 0.0, 1};

  std::vector<double> edges{a};
  for (double p : opts.breakpoints)
    if (p > a && p < b) edges.push_back(p);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<detail::Panel> panels;
  std::size_t evaluations = 0;
  double value = 0.0, error = 0.0, magnitude = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto p = detail::gauss_kronrod_15(f, edges[i], edges[i + 1]);
    evaluations += 15;
    value += p.value;
    error += p.error;
    magnitude += p.magnitude;
    panels.push(p);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Subnormal integrands carry no relative precision; anything below the
  // smallest normal double counts as converged.
  constexpr double tiny = std::numeric_limits<double>::min();
  auto target = [&] { return std::max({rel_tol * std::abs(value), opts.abs_tol, 50.0 * eps * magnitude, tiny}); };

  while (error > target()) {
    if (!std::isfinite(value)) throw NumericalError("integrate_finite: non-finite integrand", value, error);
    if (evaluations + 30 > opts.max_evaluations)
      throw NumericalError("integrate_finite: evaluation budget exhausted", value, error);
    const auto worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Panel cannot be split further in double precision; accept what we have.
      break;
    }
    panels.pop();
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    magnitude += left.magnitude + right.magnitude - worst.magnitude;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum from the panels to shed the drift of the incremental updates.
  CompensatedSum v, e;
  while (!panels.empty()) {
    v.add(panels.top().value);
    e.add(panels.top().error);
    panels.pop();
  }
  return {v.value(), std::max(0.0, e.value()), evaluations};
}

/// ∫₀^∞ f for integrands decaying at least exponentially on `decay_scale`.
/// The first panel [0, decay_scale] is integrated in u = √x so that √x
/// behaviour at the origin stays smooth; the range is truncated where |f|
/// falls below 1e-16 of its sampled peak (never before 40 decay scales) and
/// an exponential tail bound is added to the error estimate.
template <RealFunction F>
QuadratureResult integrate_semi_infinite(const F& f, double decay_scale, double rel_tol, const QuadratureOptions& opts = {}) {
  if (!(decay_scale > 0.0)) throw ArgumentError("integrate_semi_infinite: decay_scale must be positive");
  if (!(rel_tol > 0.0)) throw ArgumentError("integrate_semi_infinite: rel_tol must be positive");

  double peak = 0.0;
  double upper = 40.0 * decay_scale;
  constexpr int samples = 400;
  for (int i = 1; i <= samples; ++i) peak = std::max(peak, std::abs(f(upper * i / samples)));
  const double cap = 1.0e4 * decay_scale;
  while (std::abs(f(upper)) > 1.0e-16 * peak && upper < cap) upper *= 1.5;
  upper = std::min(upper, cap);

  const double tail_bound = std::abs(f(upper)) * decay_scale;

  const double root = std::sqrt(decay_scale);
  auto near_origin = [&f](double u) { return 2.0 * u * f(u * u); };
  QuadratureOptions inner = opts;
  inner.breakpoints.clear();
  for (double p : opts.breakpoints)
    if (p > 0.0 && p < decay_scale) inner.breakpoints.push_back(std::sqrt(p));
  const auto head = integrate_finite(near_origin, 0.0, root, rel_tol, inner);

  QuadratureOptions outer = opts;
  outer.max_evaluations = opts.max_evaluations > head.evaluations ? opts.max_evaluations - head.evaluations : 0;
  const auto body = integrate_finite(f, decay_scale, upper, rel_tol, outer);

  return {head.value + body.value, head.error_estimate + body.error_estimate + tail_bound,
          head.evaluations + body.evaluations + samples + 2};
}

/// Bernoulli numbers B_2, B_4, ..., B_20.
inline constexpr std::array<double, 10> bernoulli_even = {
    1.0 / 6.0,   -1.0 / 30.0,    1.0 / 42.0,  -1.0 / 30.0,       5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

/// Euler-Maclaurin value of Σ'_{n≥0} g(n) − ∫₀^∞ g(n) dn (n = 0 term halved)
/// for g vanishing with all derivatives at infinity:
///     −Σ_k B_{2k}/(2k)! g^{(2k−1)}(0).
/// `odd_derivatives` holds g'(0), g'''(0), g^(5)(0), ...; at least the first
/// two are required.
inline double sum_minus_integral(std::span<const double> odd_derivatives) {
  if (odd_derivatives.size() < 2)
    throw ArgumentError("sum_minus_integral: need derivatives through third order");
  if (odd_derivatives.size() > bernoulli_even.size())
    throw ArgumentError("sum_minus_integral: at most " + std::to_string(bernoulli_even.size()) + " odd derivatives supported");
  double result = 0.0;
  double factorial = 1.0;
  for (std::size_t k = 0; k < odd_derivatives.size(); ++k) {
    const double order = 2.0 * static_cast<double>(k + 1);
    factorial *= (order - 1.0) * order;
    result -= bernoulli_even[k] / factorial * odd_derivatives[k];
  }
  return result;
}

inline double sum_minus_integral(std::initializer_list<double> odd_derivatives) {
  return sum_minus_integral(std::span<const double>(odd_derivatives.begin(), odd_derivatives.size()));
}

/// Direct evaluation of Σ'_{n≥0} g(n) − ∫₀^∞ g for g(n) = ∫_n^∞ rate(s) ds,
/// using the exact identity
///     Σ' g(n) − ∫ g = ∫₀^∞ (1/2 − {s}) rate(s) ds,
/// integrated one unit cell at a time so that no large sum and integral are
/// ever subtracted. `rate` must be negligible beyond `upper`.
template <RealFunction F>
QuadratureResult sum_minus_integral_direct(const F& rate, double upper, double rel_tol) {
  if (!(upper > 0.0)) throw ArgumentError("sum_minus_integral_direct: upper must be positive");
  CompensatedSum total, error;
  std::size_t evaluations = 0;
  QuadratureOptions opts;
  // Each cell is tiny compared with the terms it cancels against, so a
  // relative tolerance per cell is meaningless; use the round-off floor.
  opts.abs_tol = 0.0;
  const auto cells = static_cast<std::size_t>(std::ceil(upper));
  for (std::size_t n = 0; n < cells; ++n) {
    const double left = static_cast<double>(n);
    auto kernel = [&](double s) { return (0.5 - (s - left)) * rate(s); };
    const auto cell = integrate_finite(kernel, left, left + 1.0, rel_tol, opts);
    total.add(cell.value);
    error.add(cell.error_estimate);
    evaluations += cell.evaluations;
  }
  return {total.value(), error.value(), evaluations};
}

/// Brent's method: bisection safeguarded inverse-quadratic / secant steps.
/// Stops when the bracket is narrower than `tol` (plus a few ulps of the root)
/// or f vanishes exactly.
template <RealFunction F>
double find_root_bracketed(const F& f, Bracket bracket, double tol, int max_iterations = 200) {
  if (!(tol > 0.0)) throw ArgumentError("find_root_bracketed: tol must be positive");
  double a = bracket.lo, b = bracket.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(fa * fb < 0.0)) throw BracketError("find_root_bracketed: no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");

  double c = a, fc = fa, d = b - a, e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double mid = 0.5 * (c - b);
    if (std::abs(mid) <= tol1 || fb == 0.0) return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * mid * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc, r = fb / fc;
        p = s * (2.0 * mid * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0)
        q = -q;
      else
        p = -p;
      if (2.0 * p < std::min(3.0 * mid * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = mid;
        e = d;
      }
    } else {
      d = mid;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (mid > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw NumericalError("find_root_bracketed: iteration cap reached", b, std::abs(c - b));
}

template <RealFunction F>
double central_difference(const F& f, double x, double h) {
  if (!(h > 0.0)) throw ArgumentError("central_difference: step must be positive");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace zpe::numerics
