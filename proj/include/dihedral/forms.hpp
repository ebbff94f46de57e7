#pragma once

// Symbolic 1-forms: products of linear factors with real exponents on the
// upper half-plane, and products of theta factors on rectangular tori.
// Branches are fixed by an interval on which the form is declared positive;
// evaluation off that interval continues the branch explicitly.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dihedral/quadrature.hpp"
#include "dihedral/theta.hpp"

namespace dihedral {

class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& what, cplx where)
      : std::runtime_error(what), where_(where) {}
  cplx where() const { return where_; }

 private:
  cplx where_;
};

struct LinearFactor {
  double root;
  double exponent;
};

// f(z) = scale * e^{-i phase0} * prod_k (z - r_k)^{e_k}, with each factor's
// argument taken in [0, pi] (the upper-half-plane branch) and phase0 chosen
// so the form is positive at the midpoint of the normalization interval when
// scale = 1.
class HalfPlaneForm {
 public:
  HalfPlaneForm() = default;

  HalfPlaneForm(std::vector<LinearFactor> factors, double norm_lo,
                double norm_hi, cplx scale = cplx(1.0, 0.0))
      : factors_(std::move(factors)), norm_lo_(norm_lo), norm_hi_(norm_hi) {
    const double mid = 0.5 * (norm_lo + norm_hi);
    double phase0 = 0.0;
    for (const auto& f : factors_) {
      if (f.root > mid) phase0 += f.exponent * kPi;
      if (f.root > norm_lo && f.root < norm_hi)
        throw std::invalid_argument(
            "HalfPlaneForm: root inside normalization interval");
    }
    log_prefactor_ = std::log(scale) - cplx(0.0, phase0);
  }

  const std::vector<LinearFactor>& factors() const { return factors_; }
  double norm_lo() const { return norm_lo_; }
  double norm_hi() const { return norm_hi_; }
  cplx prefactor() const { return std::exp(log_prefactor_); }

  void scale_by(cplx s) { log_prefactor_ += std::log(s); }

  double exponent_at(double root, double eps = 1e-12) const {
    double e = 0.0;
    for (const auto& f : factors_)
      if (std::abs(f.root - root) <= eps) e += f.exponent;
    return e;
  }

  double exponent_sum() const {
    double s = 0.0;
    for (const auto& f : factors_) s += f.exponent;
    return s;
  }

  // Branch-respecting log on the closed upper half plane. skip_root: a root
  // whose factor is omitted (used when the quadrature supplies its weight).
  cplx log_eval(cplx z, double skip_root = std::numeric_limits<double>::quiet_NaN()) const {
    cplx acc = log_prefactor_;
    for (const auto& f : factors_) {
      if (!std::isnan(skip_root) && f.root == skip_root) continue;
      const cplx d = z - f.root;
      const double m = std::abs(d);
      if (m == 0.0) {
        if (f.exponent < 0.0)
          throw PoleError("HalfPlaneForm: evaluation at a pole", z);
        return cplx(-std::numeric_limits<double>::infinity(), 0.0);
      }
      acc += f.exponent * cplx(std::log(m), arg_upper(d));
    }
    return acc;
  }

  cplx eval(cplx z) const {
    const cplx l = log_eval(z);
    if (l.real() == -std::numeric_limits<double>::infinity())
      return cplx(0.0, 0.0);
    return std::exp(l);
  }

  // Evaluation on the circle |z - center| = R at angle theta, with every
  // factor's argument continued from the boundary branch at theta = 0 (the
  // start point center + R on the real axis). Valid for any number of turns.
  cplx eval_on_circle(cplx center, double R, double theta) const {
    const cplx z = center + R * std::exp(cplx(0.0, theta));
    cplx acc = log_prefactor_;
    for (const auto& f : factors_) {
      const double c = center.real() - f.root;  // centers are real here
      const double m = std::abs(z - f.root);
      double argc;
      if (std::abs(c) < R) {
        const double w = c / R;
        argc = theta + std::arg(1.0 + w * std::exp(cplx(0.0, -theta)));
      } else if (std::abs(c) > R) {
        argc = (c > 0.0 ? 0.0 : kPi) +
               std::arg(1.0 + (R / c) * std::exp(cplx(0.0, theta)));
      } else {
        throw std::invalid_argument("HalfPlaneForm: root on the circle");
      }
      acc += f.exponent * cplx(std::log(m), argc);
    }
    return std::exp(acc);
  }

  static double arg_upper(cplx d) {
    if (d.imag() > 0.0) return std::arg(d);
    if (d.imag() < 0.0)
      throw std::invalid_argument("HalfPlaneForm: point below the real axis");
    return d.real() >= 0.0 ? 0.0 : kPi;
  }

 private:
  std::vector<LinearFactor> factors_;
  double norm_lo_ = 0.0, norm_hi_ = 1.0;
  cplx log_prefactor_{0.0, 0.0};
};

// ---------------------------------------------------------------------------

struct ThetaFactor {
  cplx shift;
  double power;  // integer-valued: phase wraps are harmless
};

// f(z) = exp(log_prefactor) * prod_k theta(z - s_k)^{p_k} * bracket(z)^q
// where bracket(z) = theta(z - s1)/theta(z - s2) is the one fractional piece
// and q its real power. The bracket branch is fixed by positivity on a real
// interval and carried along paths by BracketTransport.
class TorusForm {
 public:
  TorusForm(TorusModulus tau, std::vector<ThetaFactor> factors,
            cplx log_prefactor = cplx(0.0, 0.0))
      : tau_(tau), factors_(std::move(factors)), log_prefactor_(log_prefactor) {}

  void set_bracket(cplx s1, cplx s2, double power, double base_lo,
                   double base_hi) {
    has_bracket_ = true;
    bracket_s1_ = s1;
    bracket_s2_ = s2;
    bracket_power_ = power;
    bracket_base_ = cplx(0.5 * (base_lo + base_hi), 0.0);
    const cplx r = bracket_ratio(bracket_base_);
    if (!(r.real() > 0.0) || std::abs(r.imag()) > 1e-9 * std::abs(r))
      throw std::invalid_argument(
          "TorusForm: bracket not positive on its normalization interval");
    bracket_base_log_ = cplx(std::log(r.real()), 0.0);
  }

  TorusModulus modulus() const { return tau_; }
  const std::vector<ThetaFactor>& factors() const { return factors_; }
  bool has_bracket() const { return has_bracket_; }
  cplx bracket_base() const { return bracket_base_; }
  cplx bracket_base_log() const { return bracket_base_log_; }
  double bracket_power() const { return bracket_power_; }
  void scale_by(cplx s) { log_prefactor_ += std::log(s); }

  // sum of theta-factor powers plus the bracket's net contribution; zero for
  // a function that is well defined on the torus at alpha = 0.
  double divisor_degree() const {
    double d = 0.0;
    for (const auto& f : factors_) d += f.power;
    return d;  // bracket contributes +q - q = 0
  }

  cplx bracket_ratio(cplx z) const {
    const LogValue a = theta_log(z - bracket_s1_, tau_);
    const LogValue b = theta_log(z - bracket_s2_, tau_);
    return LogValue{a.log_abs - b.log_abs, a.arg - b.arg}.value();
  }

  // log of the theta-product part (no bracket); phase is defined modulo 2*pi
  // times integer powers, which exponentiates consistently.
  cplx log_eval_integer_part(cplx z) const {
    cplx acc = log_prefactor_;
    for (const auto& f : factors_) {
      const LogValue lv = theta_log(z - f.shift, tau_);
      if (lv.log_abs == -std::numeric_limits<double>::infinity()) {
        if (f.power < 0.0)
          throw PoleError("TorusForm: evaluation at a pole", z);
        return cplx(-std::numeric_limits<double>::infinity(), 0.0);
      }
      acc += f.power * cplx(lv.log_abs, lv.arg);
    }
    return acc;
  }

  // bracket_log: continuous log of bracket_ratio at z (from a transport);
  // ignored when the form has no bracket.
  cplx eval(cplx z, cplx bracket_log = cplx(0.0, 0.0)) const {
    cplx acc = log_eval_integer_part(z);
    if (acc.real() == -std::numeric_limits<double>::infinity())
      return cplx(0.0, 0.0);
    if (has_bracket_) acc += bracket_power_ * bracket_log;
    return std::exp(acc);
  }

 private:
  TorusModulus tau_;
  std::vector<ThetaFactor> factors_;
  cplx log_prefactor_{0.0, 0.0};
  bool has_bracket_ = false;
  cplx bracket_s1_{0.0, 0.0}, bracket_s2_{0.0, 0.0};
  double bracket_power_ = 0.0;
  cplx bracket_base_{0.0, 0.0};
  cplx bracket_base_log_{0.0, 0.0};
};

// Carries the unwrapped log of a theta ratio along straight-segment paths.
// Steps are subdivided until each principal-value increment is small, so the
// continuation cannot jump a sheet.
class BracketTransport {
 public:
  explicit BracketTransport(const TorusForm& form)
      : form_(&form),
        anchor_z_(form.bracket_base()),
        anchor_log_(form.bracket_base_log()) {}

  cplx anchor() const { return anchor_z_; }
  cplx anchor_log() const { return anchor_log_; }

  // Move the anchor to z along the straight segment from the current anchor.
  void advance_to(cplx z) {
    anchor_log_ = log_at(z);
    anchor_z_ = z;
  }

  // Continuous log at z, continued from the anchor along the straight
  // segment anchor -> z.
  cplx log_at(cplx z) const {
    cplx from = anchor_z_;
    cplx acc = anchor_log_;
    cplx rf = form_->bracket_ratio(from);
    int depth_guard = 0;
    cplx target = z;
    // walk with adaptive halving
    while (from != target) {
      cplx to = target;
      cplx rt = form_->bracket_ratio(to);
      double dphi = std::arg(rt / rf);
      int depth = 0;
      while (std::abs(dphi) > 0.5 && depth < 48) {
        to = 0.5 * (from + to);
        rt = form_->bracket_ratio(to);
        dphi = std::arg(rt / rf);
        ++depth;
      }
      if (depth >= 48)
        throw std::runtime_error(
            "BracketTransport: continuation step failed to resolve");
      acc += cplx(std::log(std::abs(rt)) - std::log(std::abs(rf)), dphi);
      from = to;
      rf = rt;
      if (++depth_guard > 100000)
        throw std::runtime_error("BracketTransport: too many steps");
    }
    return acc;
  }

 private:
  const TorusForm* form_;
  cplx anchor_z_;
  cplx anchor_log_;
};

}  // namespace dihedral
