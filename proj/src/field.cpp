#include "hgcalc/field.hpp"

#include <algorithm>
#include <cmath>

#include "hgcalc/error.hpp"

namespace hgcalc {

ScalarField::ScalarField(std::string id, int dim, ValueFn value, JetFn jet, FieldTraits traits)
    : id_(std::move(id)), dim_(dim), value_(std::move(value)), jet_(std::move(jet)), traits_(std::move(traits)) {
  if (!value_) throw Error(ErrorKind::invalid_field, "field '" + id_ + "' has no evaluator");
  if (dim_ < 1 || dim_ > kMaxDim) throw Error(ErrorKind::invalid_field, "field dimension out of range");
  if (traits_.smoothness == Smoothness::vanishes_near_origin && !(traits_.r_min > 0.0))
    throw Error(ErrorKind::invalid_field, "field '" + id_ + "' vanishes near origin but r_min is not positive");
}

Jet ScalarField::jet(const Point& x) const {
  if (jet_) return jet_(x);
  Jet j;
  j.value = value_(x);
  for (int k = 0; k < dim_; ++k) j.grad[k] = fd_partial(*this, k, x).value;
  return j;
}

ScalarField ScalarField::without_partials() const {
  ScalarField f = *this;
  f.jet_ = nullptr;
  f.id_ = id_ + "_fd";
  return f;
}

ScalarField ScalarField::renamed(std::string id) const {
  ScalarField f = *this;
  f.id_ = std::move(id);
  return f;
}

ScalarField ScalarField::with_radius(std::function<double(const Point&)> radius) const {
  ScalarField f = *this;
  f.radius_ = std::move(radius);
  return f;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

// eps^{1/3} for first differences; eps^{1/6} when differencing values that
// are themselves finite differences.
double base_step(int fd_depth) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return fd_depth == 0 ? std::cbrt(eps) : std::pow(eps, 1.0 / 6.0);
}

}  // namespace

Derivative fd_partial(const ScalarField& f, int j, const Point& x) {
  if (j < 0 || j >= f.dim()) throw Error(ErrorKind::invalid_argument, "partial index out of range");
  const double h = base_step(f.traits().fd_depth) * std::max(1.0, std::abs(x[j]));
  auto at = [&](double dx) {
    Point y = x;
    y[j] += dx;
    return f(y);
  };
  const cplx fp = at(h), fm = at(-h), fp2 = at(0.5 * h), fm2 = at(-0.5 * h);
  const cplx d1 = (fp - fm) / (2.0 * h);
  const cplx d2 = (fp2 - fm2) / h;
  Derivative d;
  d.value = (4.0 * d2 - d1) / 3.0;
  d.error_estimate = std::abs(d2 - d1) / 3.0;
  if (f.radius() && (std::isfinite(f.traits().r_min) || std::isfinite(f.traits().r_max))) {
    Point a = x, b = x;
    a[j] -= h;
    b[j] += h;
    const double r0 = f.radius()(x), ra = f.radius()(a), rb = f.radius()(b);
    for (double edge : {f.traits().r_min, f.traits().r_max}) {
      if (!std::isfinite(edge) || edge <= 0.0) continue;
      const bool side = r0 > edge;
      if ((ra > edge) != side || (rb > edge) != side) d.degraded = true;
    }
  }
  return d;
}

Derivative partial_derivative(const ScalarField& f, int j, const Point& x) {
  if (j < 0 || j >= f.dim()) throw Error(ErrorKind::invalid_argument, "partial index out of range");
  if (f.has_partials()) return Derivative{f.jet(x).grad[j], 0.0, false};
  return fd_partial(f, j, x);
}

// ---------------------------------------------------------------------------
// Building blocks

namespace {

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double dpsi(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t), b = psi(1.0 - t);
  return a / (a + b);
}

double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = psi(t), b = psi(1.0 - t);
  const double da = dpsi(t), db = -dpsi(1.0 - t);
  const double s = a + b;
  return (da * b - a * db) / (s * s);
}

ScalarField constant_field(int dim, cplx c) {
  FieldTraits t;
  t.extent.fill(std::numeric_limits<double>::infinity());
  return ScalarField(
      "constant", dim, [c](const Point&) { return c; },
      [c](const Point&) {
        Jet j;
        j.value = c;
        return j;
      },
      t);
}

ScalarField radial_field(std::string id, const HomogeneousNorm& norm, Profile g, FieldTraits traits) {
  const int n = norm.dim();
  auto value = [norm, g](const Point& x) { return g.eval(norm(x)).first; };
  auto jet = [norm, g, n](const Point& x) {
    std::array<double, kMaxDim> grad;
    const double r = norm.value_and_gradient(x, grad);
    auto [v, dv] = g.eval(r);
    Jet j;
    j.value = v;
    for (int k = 0; k < n; ++k) j.grad[k] = dv * grad[k];
    return j;
  };
  ScalarField f(std::move(id), n, value, jet, std::move(traits));
  return f.with_radius([norm](const Point& x) { return norm(x); });
}

ScalarField multiply(const ScalarField& a, const ScalarField& b, std::string id) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::invalid_argument, "field dimension mismatch");
  const int n = a.dim();
  FieldTraits t;
  const bool vanish = a.vanishes_near_origin() || b.vanishes_near_origin();
  t.smoothness = vanish ? Smoothness::vanishes_near_origin : Smoothness::smooth_everywhere;
  t.r_min = std::max(a.traits().r_min, b.traits().r_min);
  t.r_max = std::min(a.traits().r_max, b.traits().r_max);
  for (int k = 0; k < kMaxDim; ++k) t.extent[k] = std::min(a.traits().extent[k], b.traits().extent[k]);
  t.fd_depth = std::max(a.traits().fd_depth, b.traits().fd_depth);
  t.params = a.traits().params;
  t.params.insert(b.traits().params.begin(), b.traits().params.end());
  ScalarField::JetFn jet;
  if (a.has_partials() && b.has_partials()) {
    jet = [a, b, n](const Point& x) {
      Jet ja = a.jet(x), jb = b.jet(x), j;
      j.value = ja.value * jb.value;
      for (int k = 0; k < n; ++k) j.grad[k] = ja.grad[k] * jb.value + ja.value * jb.grad[k];
      return j;
    };
  }
  ScalarField f(id.empty() ? a.id() + "*" + b.id() : std::move(id), n,
                [a, b](const Point& x) { return a(x) * b(x); }, jet, t);
  if (a.radius()) return f.with_radius(a.radius());
  if (b.radius()) return f.with_radius(b.radius());
  return f;
}

ScalarField linear_combination(cplx a, const ScalarField& f, cplx b, const ScalarField& g) {
  if (f.dim() != g.dim()) throw Error(ErrorKind::invalid_argument, "field dimension mismatch");
  const int n = f.dim();
  FieldTraits t;
  const bool vanish = f.vanishes_near_origin() && g.vanishes_near_origin();
  t.smoothness = vanish ? Smoothness::vanishes_near_origin : Smoothness::smooth_everywhere;
  t.r_min = vanish ? std::min(f.traits().r_min, g.traits().r_min) : 0.0;
  for (int k = 0; k < kMaxDim; ++k) t.extent[k] = std::max(f.traits().extent[k], g.traits().extent[k]);
  t.fd_depth = std::max(f.traits().fd_depth, g.traits().fd_depth);
  ScalarField::JetFn jet;
  if (f.has_partials() && g.has_partials()) {
    jet = [a, b, f, g, n](const Point& x) {
      Jet jf = f.jet(x), jg = g.jet(x), j;
      j.value = a * jf.value + b * jg.value;
      for (int k = 0; k < n; ++k) j.grad[k] = a * jf.grad[k] + b * jg.grad[k];
      return j;
    };
  }
  ScalarField out("lincomb(" + f.id() + "," + g.id() + ")", n,
                  [a, b, f, g](const Point& x) { return a * f(x) + b * g(x); }, jet, t);
  if (f.radius()) return out.with_radius(f.radius());
  return out;
}

}  // namespace hgcalc
