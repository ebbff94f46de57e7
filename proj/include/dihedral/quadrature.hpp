#pragma once

// Complex-valued quadrature on segments, circular arcs and half-lines, with
// exponent-aware handling of algebraic endpoint singularities.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dihedral {

using cplx = std::complex<double>;

namespace quad {

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
};

inline constexpr std::int64_t kDefaultBudget = 1'000'000;

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

// A path piece for composite integration routes. Arcs carry a signed angle
// range so the winding direction is always explicit.
struct PathSegment {
  enum class Kind { line, arc, halfline };
  Kind kind = Kind::line;
  cplx a{0.0, 0.0};  // line start / halfline start (real)
  cplx b{0.0, 0.0};  // line end
  cplx center{0.0, 0.0};
  double radius = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;
  double exp_a = 0.0;  // singular exponent at the start endpoint, > -1
  double exp_b = 0.0;  // singular exponent at the end endpoint, > -1
  double decay_exponent = -2.0;  // halfline only, < -1

  static PathSegment line(cplx from, cplx to, double ea = 0.0, double eb = 0.0) {
    PathSegment s;
    s.kind = Kind::line;
    s.a = from;
    s.b = to;
    s.exp_a = ea;
    s.exp_b = eb;
    return s;
  }
  static PathSegment arc(cplx center, double radius, double th0, double th1) {
    PathSegment s;
    s.kind = Kind::arc;
    s.center = center;
    s.radius = radius;
    s.theta0 = th0;
    s.theta1 = th1;
    return s;
  }
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1] (QUADPACK dqk15 constants).
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

template <typename V>
inline double vnorm(const V& v) {
  return std::abs(v);
}

template <typename F, typename V>
inline void gk15(F&& f, double lo, double hi, V& out_k, double& out_err) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  V fk = f(c) * kWgk[7];
  V fg = f(c) * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const V f1 = f(c - h * kXgk[j]);
    const V f2 = f(c + h * kXgk[j]);
    fk = fk + (f1 + f2) * kWgk[j];
    if (j % 2 == 1) fg = fg + (f1 + f2) * kWg[j / 2];
  }
  out_k = fk * h;
  out_err = vnorm<V>((fk - fg) * h);
}

template <typename V>
struct AdaptResult {
  V value{};
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

// Adaptive bisection driven by the Kronrod error of the worst interval.
// The integrand must be smooth on the open interval; endpoint singular
// behavior is removed by the callers before reaching this engine.
template <typename V, typename F>
AdaptResult<V> adapt(F&& f, double lo, double hi, Tolerance tol,
                     std::int64_t budget) {
  struct Piece {
    double lo, hi, err;
    V val;
  };
  std::vector<Piece> pieces;
  AdaptResult<V> res;
  if (lo == hi) {
    res.converged = true;
    return res;
  }

  V v{};
  double e = 0.0;
  gk15(f, lo, hi, v, e);
  pieces.push_back({lo, hi, e, v});
  res.evaluations = 15;

  while (true) {
    V total{};
    double err = 0.0;
    for (const auto& p : pieces) {
      total = total + p.val;
      err += p.err;
    }
    const double goal = std::max(tol.abs, tol.rel * vnorm<V>(total));
    res.value = total;
    res.error_estimate = err;
    if (err <= goal) {
      res.converged = true;
      return res;
    }
    if (res.evaluations + 30 > budget || pieces.size() > 20000) {
      res.converged = false;
      return res;
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pieces.size(); ++i)
      if (pieces[i].err > pieces[worst].err) worst = i;
    Piece p = pieces[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    if (mid <= p.lo || mid >= p.hi) {
      res.converged = false;  // interval exhausted by rounding
      return res;
    }
    Piece left{p.lo, mid, 0.0, V{}};
    Piece right{mid, p.hi, 0.0, V{}};
    gk15(f, left.lo, left.hi, left.val, left.err);
    gk15(f, right.lo, right.hi, right.val, right.err);
    res.evaluations += 30;
    pieces[worst] = left;
    pieces.push_back(right);
  }
}

}  // namespace detail

// Integral over the straight segment [a, b] with endpoint weights in the
// normalized parameter u in [0, 1]:
//
//   value = (b - a) * Int_0^1 u^exp_a (1-u)^exp_b f(a + (b-a) u) du
//
// f must be analytic on the open segment; the weight factors are supplied by
// the quadrature, not by f. The weights are defined in segment coordinates;
// a caller wanting the literal (z-a)^ea (b-z)^eb weight multiplies by its own
// branch of (b-a)^(ea+eb). Endpoint singularities are removed exactly by the
// substitutions u = s^(1/(1+exp_a)) and 1-u = s^(1/(1+exp_b)).
template <typename F>
QuadratureResult integrate_segment(F&& f, cplx a, cplx b, double exp_a,
                                   double exp_b, Tolerance tol = {},
                                   std::int64_t budget = kDefaultBudget) {
  if (!(exp_a > -1.0) || !(exp_b > -1.0))
    throw std::invalid_argument(
        "integrate_segment: singular exponent must be > -1");
  if (!(tol.abs > 0.0) || !(tol.rel >= 0.0))
    throw std::invalid_argument("integrate_segment: tolerance must be > 0");

  const cplx d = b - a;
  const double pa = 1.0 / (1.0 + exp_a);
  const double pb = 1.0 / (1.0 + exp_b);
  const double sa = std::pow(0.5, 1.0 / pa);
  const double sb = std::pow(0.5, 1.0 / pb);

  // left half: u = s^pa, weight (1-u)^eb kept analytically
  auto left = [&](double s) -> cplx {
    const double u = std::pow(s, pa);
    return pa * std::pow(1.0 - u, exp_b) * f(a + d * u);
  };
  // right half: 1-u = s^pb
  auto right = [&](double s) -> cplx {
    const double u = 1.0 - std::pow(s, pb);
    return pb * std::pow(u, exp_a) * f(a + d * u);
  };

  Tolerance half{0.5 * tol.abs, 0.5 * tol.rel};
  const auto rl = detail::adapt<cplx>(left, 0.0, sa, half, budget / 2);
  const auto rr = detail::adapt<cplx>(right, 0.0, sb, half, budget / 2);

  QuadratureResult out;
  out.value = d * (rl.value + rr.value);
  out.error_estimate = std::abs(d) * (rl.error_estimate + rr.error_estimate);
  out.evaluations = rl.evaluations + rr.evaluations;
  out.converged = rl.converged && rr.converged;
  return out;
}

// Integral along the arc z(theta) = center + radius e^{i theta}, theta from
// theta0 to theta1 (signed; counterclockwise when theta1 > theta0). f is
// called with theta and must return the integrand value at z(theta), keeping
// any multivalued factor continuous in theta; the dz factor is supplied here.
// singularities, when provided, are rejected if the circle passes within
// margin*radius of one of them.
template <typename F>
QuadratureResult integrate_arc(F&& f, cplx center, double radius, double th0,
                               double th1, Tolerance tol = {},
                               std::span<const cplx> singularities = {},
                               double margin = 1e-6,
                               std::int64_t budget = kDefaultBudget) {
  if (!(radius > 0.0)) throw std::invalid_argument("integrate_arc: radius");
  for (cplx s : singularities) {
    if (std::abs(std::abs(s - center) - radius) < margin * radius)
      throw std::invalid_argument(
          "integrate_arc: arc passes within margin of a singularity");
  }
  auto g = [&](double th) -> cplx {
    return f(th) * cplx(0.0, radius) * std::exp(cplx(0.0, th));
  };
  const auto r = detail::adapt<cplx>(g, th0, th1, tol, budget);
  return {r.value, r.error_estimate, r.evaluations, r.converged};
}

// Improper integral of f over [start, inf), where f ~ C t^decay_exponent as
// t -> inf (decay_exponent < -1) and f may carry an integrable algebraic
// factor (t-start)^exp_start at the start. Compactified with t = start/s^2
// (fixed project-wide); the resulting endpoint powers are handled by the
// segment machinery.
template <typename F>
QuadratureResult integrate_halfline(F&& f, double start, double decay_exponent,
                                    Tolerance tol = {}, double exp_start = 0.0,
                                    std::int64_t budget = kDefaultBudget) {
  if (!(decay_exponent < -1.0))
    throw std::invalid_argument("integrate_halfline: insufficient decay");
  if (!(start > 0.0))
    throw std::invalid_argument("integrate_halfline: start must be > 0");
  if (!(exp_start > -1.0))
    throw std::invalid_argument("integrate_halfline: exponent must be > -1");

  const double e0 = -2.0 * decay_exponent - 3.0;  // power of s at s = 0
  auto g = [&](cplx zs) -> cplx {
    const double s = zs.real();
    const double t = start / (s * s);
    cplx v = f(t) * (2.0 * start / (s * s * s));
    // strip the known endpoint powers; integrate_segment puts them back
    v *= std::pow(s, -e0);
    v *= std::pow(1.0 - s, -exp_start);
    return v;
  };
  return integrate_segment(g, cplx(0.0), cplx(1.0), e0, exp_start, tol,
                           budget);
}

// Throwing convenience wrapper.
inline cplx require(const QuadratureResult& r, const char* what) {
  if (!r.converged)
    throw QuadratureError(std::string("quadrature did not converge: ") + what,
                          r);
  return r.value;
}

inline cplx require(const detail::AdaptResult<cplx>& r, const char* what) {
  return require(
      QuadratureResult{r.value, r.error_estimate, r.evaluations, r.converged},
      what);
}

}  // namespace quad
}  // namespace dihedral
