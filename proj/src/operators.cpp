#include "hgcalc/operators.hpp"

#include <cmath>

#include "hgcalc/error.hpp"

namespace hgcalc {

std::string to_string(PositionVariant v) {
  return v == PositionVariant::coordinate ? "coordinate" : "exp_coordinate";
}

std::string to_string(MomentumVariant v) {
  switch (v) {
    case MomentumVariant::plain_gradient: return "plain_gradient";
    case MomentumVariant::weighted_gradient: return "weighted_gradient";
    case MomentumVariant::weighted_frame: return "weighted_frame";
  }
  return "?";
}

std::string to_string(EulerVariant v) {
  return v == EulerVariant::dilation_weighted ? "dilation_weighted" : "paper_example";
}

std::string to_string(RadialMethod v) { return v == RadialMethod::euler_quotient ? "euler_quotient" : "orbit_fd"; }

std::string to_string(const PmPairing& p) { return to_string(p.position) + "/" + to_string(p.momentum); }

PmPairing compatible_pairing(const GroupSpec& g) {
  if (g.kind() != GroupKind::abelian) return {PositionVariant::exp_coordinate, MomentumVariant::weighted_frame};
  if (g.weights().isotropic() && g.weights()[0] == 1.0)
    return {PositionVariant::coordinate, MomentumVariant::plain_gradient};
  return {PositionVariant::coordinate, MomentumVariant::weighted_gradient};
}

// ---------------------------------------------------------------------------
// Pointwise kernels

CVector position_from_jet(PositionVariant v, const GroupSpec& g, const Point& x, const Jet& j) {
  const int n = g.dim();
  CVector out(n);
  if (v == PositionVariant::coordinate) {
    for (int k = 0; k < n; ++k) out[k] = x[k] * j.value;
  } else {
    const Vector e = exp_coords(g, x);
    for (int k = 0; k < n; ++k) out[k] = e[k] * j.value;
  }
  return out;
}

CVector momentum_from_jet(MomentumVariant v, const GroupSpec& g, const Point& x, const Jet& j) {
  const int n = g.dim();
  constexpr cplx mi(0.0, -1.0);
  CVector out(n);
  switch (v) {
    case MomentumVariant::plain_gradient:
      for (int k = 0; k < n; ++k) out[k] = mi * j.grad[k];
      break;
    case MomentumVariant::weighted_gradient:
      if (g.kind() != GroupKind::abelian)
        throw Error(ErrorKind::invalid_argument, "weighted_gradient momentum needs an abelian group");
      for (int k = 0; k < n; ++k) out[k] = mi * g.weights()[k] * j.grad[k];
      break;
    case MomentumVariant::weighted_frame: {
      const auto c = g.frame_at(x);
      for (int a = 0; a < n; ++a) {
        cplx s{};
        for (int k = 0; k < n; ++k) s += c[a][k] * j.grad[k];
        out[a] = mi * g.weights()[a] * s;
      }
      break;
    }
  }
  return out;
}

cplx euler_from_jet(const GroupSpec& g, const Point& x, const Jet& j) {
  cplx s{};
  for (int k = 0; k < g.dim(); ++k) s += g.weights()[k] * x[k] * j.grad[k];
  return s;
}

namespace {

void require_dim(const GroupSpec& g, const ScalarField& f, const Point& x) {
  if (f.dim() != g.dim() || x.n != g.dim())
    throw Error(ErrorKind::invalid_argument, "dimension mismatch between group, field and point");
}

// True when f is known to vanish at x through its support hint.
bool inside_hole(const HomogeneousNorm& norm, const ScalarField& f, double r) {
  (void)norm;
  return f.vanishes_near_origin() && r <= f.traits().r_min;
}

}  // namespace

CVector position_apply(PositionVariant v, const GroupSpec& g, const ScalarField& f, const Point& x) {
  require_dim(g, f, x);
  Jet j;
  j.value = f(x);
  return position_from_jet(v, g, x, j);
}

CVector momentum_apply(MomentumVariant v, const GroupSpec& g, const ScalarField& f, const Point& x) {
  require_dim(g, f, x);
  return momentum_from_jet(v, g, x, f.jet(x));
}

cplx euler_apply(EulerVariant v, const GroupSpec& g, const ScalarField& f, const Point& x) {
  require_dim(g, f, x);
  const Jet j = f.jet(x);
  if (v == EulerVariant::dilation_weighted) return euler_from_jet(g, x, j);
  const Vector e = exp_coords(g, x);
  cplx s{};
  for (int k = 0; k < g.dim(); ++k)
    s += e[k] * g.apply_frame(k, x, std::span<const cplx>(j.grad.data(), g.dim()));
  return s;
}

cplx radial_apply(RadialMethod m, const GroupSpec& g, const HomogeneousNorm& norm, const ScalarField& f,
                  const Point& x) {
  require_dim(g, f, x);
  const double r = norm(x);
  if (!(r > 0.0)) throw Error(ErrorKind::singular_point, "radial derivative at the origin");
  if (m == RadialMethod::euler_quotient) return euler_from_jet(g, x, f.jet(x)) / r;

  const Point y = dilate(g, 1.0 / r, x);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double h = (f.traits().fd_depth == 0 ? std::cbrt(eps) : std::pow(eps, 1.0 / 6.0)) * std::max(1.0, r);
  auto at = [&](double s) { return f(dilate(g, s, y)); };
  const cplx d1 = (at(r + h) - at(r - h)) / (2.0 * h);
  const cplx d2 = (at(r + 0.5 * h) - at(r - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

cplx coulomb_apply(const HomogeneousNorm& norm, const ScalarField& f, const Point& x) {
  const double r = norm(x);
  if (inside_hole(norm, f, r)) return 0.0;
  if (!(r > 0.0)) throw Error(ErrorKind::singular_point, "Coulomb operator at the origin");
  return f(x) / r;
}

cplx dilation_generator_apply(const GroupSpec& g, const HomogeneousNorm& norm, const ScalarField& f,
                              const Point& x) {
  const double r = norm(x);
  if (!(r > 0.0)) throw Error(ErrorKind::singular_point, "dilation generator at the origin");
  const cplx rf = radial_apply(RadialMethod::euler_quotient, g, norm, f, x);
  return cplx(0.0, -1.0) * (rf + (g.homogeneous_dimension() - 1.0) / (2.0 * r) * f(x));
}

// ---------------------------------------------------------------------------
// Handles

namespace {

FieldTraits derived_traits(const ScalarField& f, bool differentiated) {
  FieldTraits t = f.traits();
  if (differentiated && !f.has_partials()) ++t.fd_depth;
  return t;
}

ScalarField keep_radius(ScalarField out, const ScalarField& f) {
  return f.radius() ? out.with_radius(f.radius()) : out;
}

// f * |x|^power with the product-rule jet.
ScalarField times_norm_power(const HomogeneousNorm& norm, const ScalarField& f, double power, std::string id) {
  const int n = f.dim();
  auto value = [norm, f, power](const Point& x) -> cplx {
    const double r = norm(x);
    if (inside_hole(norm, f, r)) return 0.0;
    if (power < 0.0 && !(r > 0.0)) throw Error(ErrorKind::singular_point, "negative norm power at the origin");
    return f(x) * std::pow(r, power);
  };
  ScalarField::JetFn jet;
  if (f.has_partials()) {
    jet = [norm, f, power, n](const Point& x) {
      Jet out;
      std::array<double, kMaxDim> gr;
      const double r = norm.value_and_gradient(x, gr);
      if (inside_hole(norm, f, r)) return out;
      if (power < 0.0 && !(r > 0.0)) throw Error(ErrorKind::singular_point, "negative norm power at the origin");
      const Jet j = f.jet(x);
      const double w = std::pow(r, power);
      const double dw = power == 0.0 ? 0.0 : power * std::pow(r, power - 1.0);
      out.value = j.value * w;
      for (int k = 0; k < n; ++k) out.grad[k] = j.grad[k] * w + j.value * dw * gr[k];
      return out;
    };
  }
  return keep_radius(ScalarField(std::move(id), n, value, jet, derived_traits(f, false)), f);
}

}  // namespace

OperatorHandle coulomb_operator(const HomogeneousNorm& norm) {
  return OperatorHandle("C", "", Smoothness::vanishes_near_origin,
                        [norm](const ScalarField& f) { return times_norm_power(norm, f, -1.0, "C(" + f.id() + ")"); });
}

OperatorHandle norm_power_operator(const HomogeneousNorm& norm, double power) {
  const std::string name = "|x|^" + std::to_string(power);
  return OperatorHandle(name, "", power < 0 ? Smoothness::vanishes_near_origin : Smoothness::smooth_everywhere,
                        [norm, power, name](const ScalarField& f) {
                          return times_norm_power(norm, f, power, name + "(" + f.id() + ")");
                        });
}

OperatorHandle identity_operator() {
  return OperatorHandle("I", "", Smoothness::smooth_everywhere, [](const ScalarField& f) { return f; });
}

OperatorHandle euler_operator(const GroupSpec& g, EulerVariant v) {
  return OperatorHandle("E", to_string(v), Smoothness::smooth_everywhere, [g, v](const ScalarField& f) {
    return keep_radius(ScalarField("E(" + f.id() + ")", f.dim(),
                                   [g, v, f](const Point& x) { return euler_apply(v, g, f, x); }, nullptr,
                                   derived_traits(f, true)),
                       f);
  });
}

OperatorHandle radial_operator(const GroupSpec& g, const HomogeneousNorm& norm, RadialMethod m) {
  return OperatorHandle("R", to_string(m), Smoothness::vanishes_near_origin, [g, norm, m](const ScalarField& f) {
    return keep_radius(ScalarField(
                           "R(" + f.id() + ")", f.dim(),
                           [g, norm, m, f](const Point& x) -> cplx {
                             if (inside_hole(norm, f, norm(x))) return 0.0;
                             return radial_apply(m, g, norm, f, x);
                           },
                           nullptr, derived_traits(f, true)),
                       f);
  });
}

OperatorHandle dilation_generator_operator(const GroupSpec& g, const HomogeneousNorm& norm) {
  return OperatorHandle("Rg", "", Smoothness::vanishes_near_origin, [g, norm](const ScalarField& f) {
    return keep_radius(ScalarField(
                           "Rg(" + f.id() + ")", f.dim(),
                           [g, norm, f](const Point& x) -> cplx {
                             if (inside_hole(norm, f, norm(x))) return 0.0;
                             return dilation_generator_apply(g, norm, f, x);
                           },
                           nullptr, derived_traits(f, true)),
                       f);
  });
}

OperatorHandle operator_by_name(const std::string& name, const GroupSpec& g, const HomogeneousNorm& norm) {
  if (name == "C") return coulomb_operator(norm);
  if (name == "C2") return norm_power_operator(norm, -2.0);
  if (name == "E" || name == "E.dilation_weighted") return euler_operator(g);
  if (name == "E.paper_example") return euler_operator(g, EulerVariant::paper_example);
  if (name == "R" || name == "R.euler_quotient") return radial_operator(g, norm);
  if (name == "R.orbit_fd") return radial_operator(g, norm, RadialMethod::orbit_fd);
  if (name == "Rg") return dilation_generator_operator(g, norm);
  if (name == "I") return identity_operator();
  throw Error(ErrorKind::invalid_argument, "unknown operator '" + name + "'");
}

cplx operator_commutator(const OperatorHandle& a, const OperatorHandle& b, const ScalarField& f, const Point& x) {
  return a(b(f))(x) - b(a(f))(x);
}

double symmetry_residual(const QuadratureScheme& q, const OperatorHandle& a, const ScalarField& f,
                         const ScalarField& h) {
  q.require_decay(f);
  q.require_decay(h);
  const ScalarField af = a(f), ah = a(h);
  auto r = q.integrate(
      [&](const Point& x, std::span<double> out) {
        const cplx u = af(x) * std::conj(h(x));
        const cplx v = f(x) * std::conj(ah(x));
        out[0] = u.real();
        out[1] = u.imag();
        out[2] = v.real();
        out[3] = v.imag();
      },
      4, false);
  const cplx lhs(r.value[0], r.value[1]), rhs(r.value[2], r.value[3]);
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

std::pair<double, double> pm_factorization_residual(const GroupSpec& g, const PmPairing& pm, const ScalarField& f,
                                                    const Point& x) {
  require_dim(g, f, x);
  const int n = g.dim();
  const Jet j = f.jet(x);
  const CVector p = position_from_jet(pm.position, g, x, j);
  const CVector m = momentum_from_jet(pm.momentum, g, x, j);
  constexpr cplx i(0.0, 1.0);
  double lhs = 0.0;
  for (int k = 0; k < n; ++k) lhs += 2.0 * (p[k] * std::conj(i * m[k])).real();

  // |f|^2 as a real field with gradient 2 Re(conj(f) grad f).
  Jet mod;
  mod.value = std::norm(j.value);
  for (int k = 0; k < n; ++k) mod.grad[k] = 2.0 * (std::conj(j.value) * j.grad[k]).real();
  Jet unit;
  unit.value = 1.0;
  const CVector pos = position_from_jet(pm.position, g, x, unit);
  const CVector mom = momentum_from_jet(pm.momentum, g, x, mod);
  double mid = 0.0;
  for (int k = 0; k < n; ++k) mid += (pos[k] * (i * mom[k])).real();
  const double e = euler_from_jet(g, x, mod).real();
  return {std::abs(lhs - mid), std::abs(mid - e)};
}

}  // namespace hgcalc
