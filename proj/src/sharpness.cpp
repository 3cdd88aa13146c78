#include "hgcalc/sharpness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "hgcalc/error.hpp"
#include "hgcalc/field.hpp"
#include "hgcalc/operators.hpp"
#include "hgcalc/polar.hpp"
#include "hgcalc/quadrature.hpp"

namespace hgcalc {

std::string to_string(SharpnessTarget t) {
  switch (t) {
    case SharpnessTarget::hardy: return "hardy";
    case SharpnessTarget::ckn: return "ckn";
    case SharpnessTarget::hk: return "hk";
    case SharpnessTarget::hpw: return "hpw";
    case SharpnessTarget::euler_corollary: return "euler_corollary";
  }
  return "?";
}

SharpnessTarget parse_sharpness_target(const std::string& s) {
  for (auto t : {SharpnessTarget::hardy, SharpnessTarget::ckn, SharpnessTarget::hk, SharpnessTarget::hpw,
                 SharpnessTarget::euler_corollary})
    if (to_string(t) == s) return t;
  throw Error(ErrorKind::config_error, "unknown inequality '" + s + "' (hardy, ckn, hk, hpw, euler_corollary)");
}

std::vector<FamilyParam> default_family(SharpnessTarget t) {
  switch (t) {
    case SharpnessTarget::hk: return {{"s", -1.0, 1.0}, {"eta", -0.3, 0.5}};
    case SharpnessTarget::hpw: return {{"beta", 1.0, 6.0}, {"eta", 0.0, 2.0}};
    default: return {{"epsilon", -0.25, 0.25}, {"T", 1.0, 40.0}};
  }
}

std::pair<double, std::string> sharp_constant(SharpnessTarget t, const GroupSpec& g, double alpha) {
  const double Q = g.homogeneous_dimension();
  switch (t) {
    case SharpnessTarget::hardy:
    case SharpnessTarget::hpw:
      if (Q <= 2.0) throw Error(ErrorKind::precondition_violation, "needs Q > 2");
      return {2.0 / (Q - 2.0), "maximize"};
    case SharpnessTarget::euler_corollary: return {2.0 / Q, "maximize"};
    case SharpnessTarget::hk: return {0.5 * Q, "minimize"};
    case SharpnessTarget::ckn: {
      const double c = std::abs(g.dim() - 2.0 - 2.0 * alpha) / 2.0;
      if (c == 0.0) throw Error(ErrorKind::precondition_violation, "degenerate constant: |n-2-2a| = 0");
      return {c, "minimize"};
    }
  }
  throw Error(ErrorKind::invalid_argument, "unknown inequality");
}

namespace {

double get(const std::map<std::string, double>& p, const std::string& k) {
  auto it = p.find(k);
  if (it == p.end()) throw Error(ErrorKind::invalid_argument, "missing family parameter '" + k + "'");
  return it->second;
}

// |x|^{-a+eps} chi(ln|x|), chi = 1 on |t| <= T/2 and 0 for |t| >= T.
ScalarField power_family(const HomogeneousNorm& norm, double a, double eps, double T) {
  const double half = 0.5 * T;
  Profile prof{[a, eps, T, half](double r) -> std::pair<cplx, cplx> {
    if (!(r > 0.0)) return {0.0, 0.0};
    const double t = std::log(r);
    const double u = (T - std::abs(t)) / half;
    if (u <= 0.0) return {0.0, 0.0};
    const double chi = smooth_step(u);
    const double dchi = (t > 0 ? -1.0 : 1.0) * smooth_step_derivative(u) / half;
    const double p = std::pow(r, -a + eps);
    return {p * chi, p / r * ((-a + eps) * chi + dchi)};
  }};
  FieldTraits tr;
  tr.smoothness = Smoothness::vanishes_near_origin;
  tr.r_min = std::exp(-T);
  tr.r_max = std::exp(T);
  tr.params = {{"a", a}, {"epsilon", eps}, {"T", T}};
  return radial_field("power_family", norm, prof, tr);
}

// (1 + eta r^2) exp(-r^beta).
ScalarField bump_family(const HomogeneousNorm& norm, double beta, double eta) {
  Profile prof{[beta, eta](double r) -> std::pair<cplx, cplx> {
    const double e = std::exp(-std::pow(r, beta));
    const double p = 1.0 + eta * r * r;
    return {p * e, (2.0 * eta * r - p * beta * std::pow(r, beta - 1.0)) * e};
  }};
  FieldTraits tr;
  tr.params = {{"beta", beta}, {"eta", eta}};
  return radial_field("bump_family", norm, prof, tr);
}

PolarScheme log_scheme(const GroupSpec& g, const QuasiNorm& qn, double r_lo, double r_hi, int panels) {
  return PolarScheme(g, qn, RadialRule{r_lo, r_hi, panels, 10, RadialSpacing::logarithmic}, 1, 4, 1);
}

double power_exponent(SharpnessTarget t, const GroupSpec& g, double alpha) {
  const double Q = g.homogeneous_dimension();
  switch (t) {
    case SharpnessTarget::hardy: return 0.5 * (Q - 2.0);
    case SharpnessTarget::euler_corollary: return 0.5 * Q;
    case SharpnessTarget::ckn: return 0.5 * (g.dim() - 2.0 - 2.0 * alpha);
    default: return 0.0;
  }
}

double hk_ratio(const GroupSpec& g, double s, double eta) {
  const int n = g.dim();
  const double w = std::exp(s);
  // exp(-w sum x_j^2 / (2 nu_j)) solves Pf = -iMf for the weighted pairing.
  std::array<double, kMaxDim> c{};
  for (int k = 0; k < n; ++k) c[k] = w / g.weights()[k];
  auto value = [c, eta, n](const Point& x) -> cplx {
    double q = 0.0;
    for (int k = 0; k < n; ++k) q += c[k] * x[k] * x[k];
    return std::exp(-0.5 * q) * (1.0 + eta * x[0] * x[0]);
  };
  auto jet = [c, eta, n](const Point& x) {
    double q = 0.0;
    for (int k = 0; k < n; ++k) q += c[k] * x[k] * x[k];
    const double e = std::exp(-0.5 * q), p = 1.0 + eta * x[0] * x[0];
    Jet j;
    j.value = e * p;
    for (int k = 0; k < n; ++k) j.grad[k] = -c[k] * x[k] * e * p;
    j.grad[0] += 2.0 * eta * x[0] * e;
    return j;
  };
  FieldTraits tr;
  tr.extent.fill(0.0);
  for (int k = 0; k < n; ++k) tr.extent[k] = std::sqrt(44.0 / c[k]) + 1.0;
  const ScalarField f("hk_family", n, value, jet, tr);
  const QuadratureScheme q = QuadratureScheme::for_fields(g, std::span<const ScalarField>(&f, 1), 4, 8, 1e-6, 1);
  q.require_decay(f);
  const PmPairing pm = compatible_pairing(g);
  auto r = q.integrate(
      [&](const Point& x, std::span<double> o) {
        const Jet j = f.jet(x);
        o[0] = std::norm(j.value);
        o[1] = position_from_jet(pm.position, g, x, j).norm2();
        o[2] = momentum_from_jet(pm.momentum, g, x, j).norm2();
      },
      3, false);
  return std::sqrt(r.value[1] * r.value[2]) / r.value[0];
}

}  // namespace

double sharpness_ratio(SharpnessTarget t, const GroupSpec& g, const QuasiNorm& qn,
                       const std::map<std::string, double>& p, const SharpnessOptions& opt) {
  if (t == SharpnessTarget::hk) return hk_ratio(g, get(p, "s"), get(p, "eta"));
  const HomogeneousNorm norm(qn, g);
  const double alpha = opt.alpha;
  if (t == SharpnessTarget::ckn && !(g.kind() == GroupKind::abelian && g.weights().isotropic() &&
                                     g.weights()[0] == 1.0 && qn.kind() == QuasiNormKind::euclidean))
    throw Error(ErrorKind::precondition_violation, "ckn search needs the Euclidean norm on an isotropic abelian group");

  ScalarField f = t == SharpnessTarget::hpw ? bump_family(norm, get(p, "beta"), get(p, "eta"))
                                            : power_family(norm, power_exponent(t, g, alpha), get(p, "epsilon"),
                                                           get(p, "T"));
  double r_lo, r_hi;
  if (t == SharpnessTarget::hpw) {
    r_lo = 1e-8;
    r_hi = std::pow(40.0, 1.0 / get(p, "beta")) * 1.5;
  } else {
    r_lo = std::exp(-get(p, "T"));
    r_hi = std::exp(get(p, "T"));
  }
  const PolarScheme ps = log_scheme(g, qn, r_lo, r_hi, opt.radial_panels);
  const int n = g.dim();
  auto v = ps.integrate(
      [&](const Point& x, std::span<double> o) {
        const double r = norm(x);
        const Jet j = f.jet(x);
        const double a2 = std::norm(j.value);
        const cplx e = euler_from_jet(g, x, j);
        switch (t) {
          case SharpnessTarget::hardy:
            o[0] = a2 / (r * r);
            o[1] = std::norm(e / r);
            break;
          case SharpnessTarget::euler_corollary:
            o[0] = a2;
            o[1] = std::norm(e);
            break;
          case SharpnessTarget::ckn: {
            double g2 = 0.0;
            for (int k = 0; k < n; ++k) g2 += std::norm(j.grad[k]);
            const double w = std::pow(r, -2.0 * alpha);
            o[0] = g2 * w;
            o[1] = a2 * w / (r * r);
            break;
          }
          case SharpnessTarget::hpw:
            o[0] = a2;
            o[1] = std::norm(e / r);
            o[2] = a2 * r * r;
            break;
          default: break;
        }
      },
      3);
  if (t == SharpnessTarget::hpw) return v[0] / std::sqrt(v[1] * v[2]);
  return std::sqrt(v[0] / v[1]);
}

SharpnessResult sharpness_search(SharpnessTarget t, const GroupSpec& g, const QuasiNorm& qn,
                                 const SharpnessOptions& opt) {
  if (opt.budget < 1) throw Error(ErrorKind::config_error, "sharpness budget must be positive");
  SharpnessResult res;
  res.inequality_id = to_string(t);
  res.group = g.name();
  res.quasinorm = qn.id();
  std::tie(res.constant_paper, res.direction) = sharp_constant(t, g, opt.alpha);
  const double sign = res.direction == "maximize" ? 1.0 : -1.0;

  std::vector<FamilyParam> box = default_family(t);
  for (const auto& o : opt.ranges) {
    auto it = std::find_if(box.begin(), box.end(), [&](const FamilyParam& b) { return b.name == o.name; });
    if (it == box.end()) throw Error(ErrorKind::config_error, "unknown family parameter '" + o.name + "'");
    if (!(o.hi >= o.lo)) throw Error(ErrorKind::config_error, "empty range for '" + o.name + "'");
    *it = o;
  }
  res.family = t == SharpnessTarget::hk    ? "exp(-e^s sum x_j^2/(2 nu_j)) (1 + eta x_1^2)"
               : t == SharpnessTarget::hpw ? "(1 + eta |x|^2) exp(-|x|^beta)"
                                           : "|x|^(-a+epsilon) chi(ln|x|; T)";

  std::map<std::string, double> cur;
  for (const auto& b : box) cur[b.name] = 0.5 * (b.lo + b.hi);
  double best = -std::numeric_limits<double>::infinity();  // sign * ratio
  std::map<std::string, double> best_p = cur;

  auto eval = [&](const std::map<std::string, double>& p) {
    double score = -std::numeric_limits<double>::infinity();
    try {
      score = sign * sharpness_ratio(t, g, qn, p, opt);
      if (!std::isfinite(score)) score = -std::numeric_limits<double>::infinity();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::precondition_violation) throw;
    }
    ++res.evaluations;
    if (score > best) {
      best = score;
      best_p = p;
    }
    res.trace.push_back(sign * best);
    return score;
  };
  auto left = [&] { return opt.budget - res.evaluations; };

  eval(cur);
  constexpr double invphi = 0.6180339887498949;
  bool stalled = false;
  while (left() > 0 && !stalled) {
    const double cycle_start = best;
    bool complete = true;
    for (const auto& b : box) {
      if (left() <= 0) {
        complete = false;
        break;
      }
      cur = best_p;
      double lo = b.lo, hi = b.hi;
      auto at = [&](double v) {
        auto p = cur;
        p[b.name] = v;
        return eval(p);
      };
      double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
      double f1 = at(x1);
      if (left() <= 0) {
        complete = false;
        break;
      }
      double f2 = at(x2);
      int it = 0;
      for (; it < 12 && left() > 0; ++it) {
        if (f1 >= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - invphi * (hi - lo);
          f1 = at(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + invphi * (hi - lo);
          f2 = at(x2);
        }
      }
      if (it < 12) complete = false;
    }
    stalled = complete && std::isfinite(cycle_start) && best - cycle_start <= opt.stall_tol * std::abs(best);
  }
  res.converged = stalled;
  res.best_ratio = sign * best;
  res.best_params = best_p;
  if (t != SharpnessTarget::hk && t != SharpnessTarget::hpw) res.best_params["delta"] = std::exp(-best_p["T"]);
  res.relative_gap = std::abs(res.best_ratio / res.constant_paper - 1.0);
  res.respects_constant = sign * (res.best_ratio - res.constant_paper) <= 1e-6 * res.constant_paper;
  return res;
}

}  // namespace hgcalc
