#include "hgcalc/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "hgcalc/error.hpp"
#include "hgcalc/group_io.hpp"

namespace hgcalc {

std::vector<std::string> shipped_group_ids() { return {"r3_isotropic", "r3_aniso_123", "r2_aniso_12", "heisenberg"}; }

GroupSpec resolve_group(const std::string& id) {
  if (id == "r3_isotropic") return GroupSpec::abelian({1, 1, 1}, id);
  if (id == "r3_aniso_123") return GroupSpec::abelian({1, 2, 3}, id);
  if (id == "r2_aniso_12") return GroupSpec::abelian({1, 2}, id);
  if (id == "heisenberg") return GroupSpec::heisenberg();
  if (id.ends_with(".json")) return load_group_file(id);
  throw Error(ErrorKind::config_error, "unknown group '" + id + "'");
}

std::vector<QuasiNorm> shipped_quasi_norms(const GroupSpec& g) {
  if (g.kind() == GroupKind::heisenberg) return {QuasiNorm::koranyi(), QuasiNorm::p_family(4)};
  const auto nu = g.weights().nu();
  if (g.weights().isotropic() && nu[0] == 1.0) return {QuasiNorm::euclidean(), QuasiNorm::p_family(4)};
  // p = 2 * max(nu) keeps |x|^p smooth in the graded quadrature variables.
  const double top = *std::max_element(nu.begin(), nu.end());
  const double p = 2.0 * std::ceil(top);
  if (p == 6.0) return {QuasiNorm::p_family(6), QuasiNorm::p_family(12)};
  return {QuasiNorm::p_family(p)};
}

std::vector<std::string> battery_field_ids() {
  return {"gauss", "aniso_gauss", "complex_gauss", "annulus_gauss", "annulus_power", "annulus_osc", "qn_radial",
          "odd"};
}

bool is_annulus_field(const std::string& id) { return id.starts_with("annulus_"); }

double AnnulusRamp::value(double r) const { return smooth_step((r - start) / width); }
double AnnulusRamp::derivative(double r) const { return smooth_step_derivative((r - start) / width) / width; }

namespace {

constexpr cplx I(0.0, 1.0);

double sq_norm(const Point& x) {
  double s = 0.0;
  for (int k = 0; k < x.n; ++k) s += x[k] * x[k];
  return s;
}

FieldTraits smooth_traits(int n, double extent, int resolution) {
  FieldTraits t;
  t.extent.fill(0.0);
  for (int k = 0; k < n; ++k) t.extent[k] = extent;
  t.resolution = resolution;
  return t;
}

// Quasi-ball of radius R is contained in the box |x_j| <= R^{nu_j}.
FieldTraits quasi_ball_traits(const GroupSpec& g, double radius, int resolution) {
  FieldTraits t;
  t.extent.fill(0.0);
  for (int k = 0; k < g.dim(); ++k) t.extent[k] = std::pow(radius, g.weights()[k]);
  t.resolution = resolution;
  return t;
}

ScalarField gauss(const GroupSpec& g) {
  const int n = g.dim();
  FieldTraits t = smooth_traits(n, 6.5, 5);
  t.params["width"] = 1.0;
  return ScalarField(
      "gauss", n, [](const Point& x) -> cplx { return std::exp(-0.5 * sq_norm(x)); },
      [n](const Point& x) {
        Jet j;
        const double v = std::exp(-0.5 * sq_norm(x));
        j.value = v;
        for (int k = 0; k < n; ++k) j.grad[k] = -x[k] * v;
        return j;
      },
      t);
}

ScalarField aniso_gauss(const GroupSpec& g) {
  const int n = g.dim();
  static constexpr std::array<double, kMaxDim> a{1.0, 0.6, 1.5, 0.8};
  FieldTraits t = smooth_traits(n, 0.0, 5);
  for (int k = 0; k < n; ++k) {
    t.extent[k] = std::sqrt(44.0 / a[k]);
    t.params["a" + std::to_string(k + 1)] = a[k];
  }
  auto q = [n](const Point& x) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += a[k] * x[k] * x[k];
    return std::exp(-0.5 * s);
  };
  return ScalarField(
      "aniso_gauss", n, [q](const Point& x) -> cplx { return q(x); },
      [q, n](const Point& x) {
        Jet j;
        const double v = q(x);
        j.value = v;
        for (int k = 0; k < n; ++k) j.grad[k] = -a[k] * x[k] * v;
        return j;
      },
      t);
}

ScalarField complex_gauss(const GroupSpec& g) {
  const int n = g.dim();
  FieldTraits t = smooth_traits(n, 6.5, 5);
  t.params["phase_wavenumber"] = 1.0;
  auto v = [](const Point& x) { return std::exp(-0.5 * sq_norm(x) + I * x[0]); };
  return ScalarField(
      "complex_gauss", n, v,
      [v, n](const Point& x) {
        Jet j;
        j.value = v(x);
        for (int k = 0; k < n; ++k) j.grad[k] = -x[k] * j.value;
        j.grad[0] += I * j.value;
        return j;
      },
      t);
}

ScalarField odd(const GroupSpec& g) {
  const int n = g.dim();
  FieldTraits t = smooth_traits(n, 5.0, 5);
  return ScalarField(
      "odd", n, [](const Point& x) -> cplx { return x[0] * std::exp(-sq_norm(x)); },
      [n](const Point& x) {
        Jet j;
        const double e = std::exp(-sq_norm(x));
        j.value = x[0] * e;
        for (int k = 0; k < n; ++k) j.grad[k] = -2.0 * x[k] * x[0] * e;
        j.grad[0] += e;
        return j;
      },
      t);
}

ScalarField qn_radial(const GroupSpec& g, const QuasiNorm& qn) {
  HomogeneousNorm norm(qn, g);
  const double s = norm.smooth_power();
  FieldTraits t = quasi_ball_traits(g, std::pow(24.0, 1.0 / s), 7);
  t.params["power"] = s;
  const int n = g.dim();
  auto f = radial_field("qn_radial", norm,
                        Profile{[s](double r) {
                          const double v = std::exp(-std::pow(r, s));
                          return std::pair<cplx, cplx>{v, -s * std::pow(r, s - 1.0) * v};
                        }},
                        t);
  (void)n;
  return f;
}

// g(r) * e^{i k x_1} with g an annulus profile (value, derivative).
template <class ProfileFn>
ScalarField annulus(const std::string& id, const GroupSpec& g, const QuasiNorm& qn, ProfileFn prof,
                    double phase_k, FieldTraits t) {
  HomogeneousNorm norm(qn, g);
  const int n = g.dim();
  auto value = [norm, prof, phase_k](const Point& x) -> cplx {
    const double r = norm(x);
    cplx v = prof(r).first;
    if (phase_k != 0.0) v *= std::exp(I * (phase_k * x[0]));
    return v;
  };
  auto jet = [norm, prof, phase_k, n](const Point& x) {
    Jet j;
    std::array<double, kMaxDim> gr;
    const double r = norm.value_and_gradient(x, gr);
    auto [v, dv] = prof(r);
    const cplx ph = phase_k != 0.0 ? std::exp(I * (phase_k * x[0])) : cplx(1.0);
    j.value = v * ph;
    for (int k = 0; k < n; ++k) j.grad[k] = dv * gr[k] * ph;
    j.grad[0] += I * phase_k * j.value;
    return j;
  };
  return ScalarField(id, n, value, jet, std::move(t)).with_radius([norm](const Point& x) { return norm(x); });
}

FieldTraits annulus_traits(const GroupSpec& g, const AnnulusRamp& ramp, int resolution) {
  FieldTraits t = quasi_ball_traits(g, 4.6, resolution);
  t.smoothness = Smoothness::vanishes_near_origin;
  t.r_min = ramp.start;
  t.params["ramp_start"] = ramp.start;
  t.params["ramp_width"] = ramp.width;
  return t;
}

ScalarField annulus_gauss(const GroupSpec& g, const QuasiNorm& qn) {
  const AnnulusRamp ramp;
  auto prof = [ramp](double r) {
    const double e = std::exp(-r * r);
    const double s = ramp.value(r);
    return std::pair<cplx, cplx>{s * e, (ramp.derivative(r) - 2.0 * r * s) * e};
  };
  return annulus("annulus_gauss", g, qn, prof, 0.0, annulus_traits(g, ramp, 10));
}

ScalarField annulus_power(const GroupSpec& g, const QuasiNorm& qn) {
  const AnnulusRamp ramp;
  const double beta = 0.5 * (g.homogeneous_dimension() - 2.0);
  auto prof = [ramp, beta](double r) {
    if (r <= ramp.start) return std::pair<cplx, cplx>{0.0, 0.0};
    const double e = std::exp(-r * r) * std::pow(r, -beta);
    const double s = ramp.value(r);
    return std::pair<cplx, cplx>{s * e, (ramp.derivative(r) + s * (-beta / r - 2.0 * r)) * e};
  };
  FieldTraits t = annulus_traits(g, ramp, 10);
  t.params["beta"] = beta;
  return annulus("annulus_power", g, qn, prof, 0.0, t);
}

ScalarField annulus_osc(const GroupSpec& g, const QuasiNorm& qn) {
  const AnnulusRamp ramp;
  constexpr double k_r = 2.0, k_1 = 1.0;
  auto prof = [ramp](double r) {
    const cplx e = std::exp(cplx(-r * r, k_r * r));
    const double s = ramp.value(r);
    return std::pair<cplx, cplx>{s * e, (ramp.derivative(r) + s * cplx(-2.0 * r, k_r)) * e};
  };
  FieldTraits t = annulus_traits(g, ramp, 10);
  t.params["radial_wavenumber"] = k_r;
  t.params["phase_wavenumber"] = k_1;
  return annulus("annulus_osc", g, qn, prof, k_1, t);
}

}  // namespace

ScalarField battery_field(const GroupSpec& g, const QuasiNorm& qn, const std::string& id) {
  if (id == "gauss") return gauss(g);
  if (id == "aniso_gauss") return aniso_gauss(g);
  if (id == "complex_gauss") return complex_gauss(g);
  if (id == "annulus_gauss") return annulus_gauss(g, qn);
  if (id == "annulus_power") return annulus_power(g, qn);
  if (id == "annulus_osc") return annulus_osc(g, qn);
  if (id == "qn_radial") return qn_radial(g, qn);
  if (id == "odd") return odd(g);
  throw Error(ErrorKind::config_error, "unknown field '" + id + "'");
}

std::vector<ScalarField> standard_battery(const GroupSpec& g, const QuasiNorm& qn) {
  std::vector<ScalarField> out;
  for (const auto& id : battery_field_ids()) out.push_back(battery_field(g, qn, id));
  return out;
}

QuadratureScheme scheme_for(const GroupSpec& g, std::span<const ScalarField> fields, double target_tol,
                            int workers) {
  int res = 4;
  for (const auto& f : fields) res = std::max(res, f.traits().resolution);
  return QuadratureScheme::for_fields(g, fields, res, 8, target_tol, workers);
}

QuadratureScheme scheme_for(const GroupSpec& g, const ScalarField& f, double target_tol, int workers) {
  return scheme_for(g, std::span<const ScalarField>(&f, 1), target_tol, workers);
}

PolarScheme polar_scheme_for(const GroupSpec& g, const QuasiNorm& qn, std::span<const ScalarField> fields,
                             int workers) {
  return PolarScheme::for_fields(g, qn, fields, 24, 4, 10, workers);
}

}  // namespace hgcalc
