#pragma once

// Adaptive quadrature over finite, half-line and whole-line domains.
// A 15-point Gauss-Kronrod rule per panel drives worst-interval-first
// bisection. Declared integrable endpoint singularities are softened by a
// local u^8 substitution before the adaptive pass. Deterministic: identical
// inputs give bit-identical results.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "etaens/errors.hpp"

namespace etaens::quad {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  bool singular_lo = false;
  bool singular_hi = false;
  // Uniform seed panels before refinement; more than one protects narrow
  // interior peaks from a falsely converged first estimate.
  int initial_panels = 8;
};

struct EvalResult {
  double value = 0.0;
  double est_abs_error = 0.0;
};

class Domain {
 public:
  enum class Kind { finite, half_line, whole_line };

  static Domain finite(double a, double b) {
    if (!(a < b)) throw std::domain_error("Domain::finite requires a < b");
    return Domain{Kind::finite, a, b};
  }
  static Domain half_line(double a) { return Domain{Kind::half_line, a, 0.0}; }
  static Domain whole_line() { return Domain{Kind::whole_line, 0.0, 0.0}; }

  Kind kind() const { return kind_; }
  double lo() const { return a_; }
  double hi() const { return b_; }

 private:
  Domain(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  Kind kind_;
  double a_, b_;
};

namespace detail {

// QUADPACK 15-point Kronrod nodes/weights with the embedded 7-point Gauss
// weights, on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(F&& f, double a, double b, double& value, double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
  }
  for (int i = 0; i < 3; ++i) {
    const int j = 2 * i + 1;
    resg += kWg[i] * (fv[j] + fv[14 - j]);
  }
  value = resk * h;
  error = std::fabs((resk - resg) * h);
  if (!std::isfinite(value)) {
    throw nonconvergence_error(
        "integrate: integrand returned a non-finite value");
  }
}

struct Panel {
  double err;
  int seq;  // creation order; deterministic tie-break
  double a, b, val;
  bool operator<(const Panel& o) const {
    return err != o.err ? err > o.err : seq < o.seq;
  }
};

// Adaptive GK15 bisection of a smooth (post-transform) integrand on [a, b].
// `budget` counts panel subdivisions across a whole integrate() call.
template <class F>
EvalResult adapt(F&& f, double a, double b, const QuadratureSpec& spec,
                 int& budget) {
  std::set<Panel> panels;
  int seq = 0;
  double total_v = 0.0, total_e = 0.0;
  const int n0 = std::max(1, spec.initial_panels);
  const double h0 = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const double pa = a + h0 * i;
    const double pb = (i == n0 - 1) ? b : a + h0 * (i + 1);
    double v, e;
    gk15(f, pa, pb, v, e);
    panels.insert(Panel{e, seq++, pa, pb, v});
    total_v += v;
    total_e += e;
  }
  while (true) {
    const double tol =
        std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_v));
    if (total_e <= tol) break;
    if (budget <= 0) {
      throw nonconvergence_error("integrate: subdivision budget exhausted");
    }
    --budget;
    const Panel worst = *panels.begin();
    panels.erase(panels.begin());
    total_v -= worst.val;
    total_e -= worst.err;
    const double m = 0.5 * (worst.a + worst.b);
    if (!(worst.a < m && m < worst.b)) {
      // interval hit floating-point resolution; keep its estimate
      total_v += worst.val;
      total_e += worst.err;
      panels.insert(worst);
      // nothing else can improve; accept remaining error
      break;
    }
    double v1, e1, v2, e2;
    gk15(f, worst.a, m, v1, e1);
    gk15(f, m, worst.b, v2, e2);
    panels.insert(Panel{e1, seq++, worst.a, m, v1});
    panels.insert(Panel{e2, seq++, m, worst.b, v2});
    total_v += v1 + v2;
    total_e += e1 + e2;
  }
  return {total_v, total_e};
}

// Integrate f over the finite interval [a, b], applying u^8 endpoint
// softening where a singular endpoint is declared.
template <class F>
EvalResult finite_piece(F&& f, double a, double b, bool sing_lo, bool sing_hi,
                        const QuadratureSpec& spec, int& budget) {
  if (sing_lo && sing_hi) {
    const double m = 0.5 * (a + b);
    auto left = finite_piece(f, a, m, true, false, spec, budget);
    auto right = finite_piece(f, m, b, false, true, spec, budget);
    return {left.value + right.value,
            left.est_abs_error + right.est_abs_error};
  }
  if (sing_lo) {
    const double w = b - a;
    auto g = [&](double v) {
      const double v4 = v * v * v * v;
      const double v7 = v4 * v * v * v;
      return f(a + w * v4 * v4) * 8.0 * w * v7;
    };
    return adapt(g, 0.0, 1.0, spec, budget);
  }
  if (sing_hi) {
    const double w = b - a;
    auto g = [&](double v) {
      const double v4 = v * v * v * v;
      const double v7 = v4 * v * v * v;
      return f(b - w * v4 * v4) * 8.0 * w * v7;
    };
    return adapt(g, 0.0, 1.0, spec, budget);
  }
  return adapt(f, a, b, spec, budget);
}

}  // namespace detail

template <class F>
EvalResult integrate(F&& f, const Domain& domain,
                     const QuadratureSpec& spec = {}) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) ||
      spec.max_subdivisions < 1) {
    throw std::domain_error("integrate: invalid QuadratureSpec");
  }
  int budget = spec.max_subdivisions;
  switch (domain.kind()) {
    case Domain::Kind::finite:
      return detail::finite_piece(f, domain.lo(), domain.hi(),
                                  spec.singular_lo, spec.singular_hi, spec,
                                  budget);
    case Domain::Kind::half_line: {
      const double a = domain.lo();
      auto g = [&](double u) {
        const double t = a + u / (1.0 - u);
        const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
        return f(t) * jac;
      };
      // the u -> 1 endpoint is regular for decaying integrands; map a
      // declared singularity at t = a to u = 0.
      return detail::finite_piece(g, 0.0, 1.0, spec.singular_lo, false, spec,
                                  budget);
    }
    case Domain::Kind::whole_line: {
      auto g = [&](double u) {
        const double d = 1.0 - u * u;
        const double x = u / d;
        const double jac = (1.0 + u * u) / (d * d);
        return f(x) * jac;
      };
      return detail::finite_piece(g, -1.0, 1.0, false, false, spec, budget);
    }
  }
  throw std::logic_error("integrate: unreachable");
}

}  // namespace etaens::quad
