#include "hgcalc/polar.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "hgcalc/error.hpp"

namespace hgcalc {

namespace {

using Matrix = std::array<std::array<double, kMaxDim>, kMaxDim>;

double determinant(Matrix m, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// du_i / dtheta_k for the hyperspherical chart; rows i, columns k.
Matrix sphere_chart_jacobian(int n, std::span<const double> th) {
  Matrix d{};
  const int m = n - 1;  // number of angles
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      // u_i = prod_{l<i} sin th_l * (i < m ? cos th_i : 1)
      const int last = i < m ? i : m;  // factors sin th_0..sin th_{last-1}
      double v = 1.0;
      if (k < last) {
        for (int l = 0; l < last; ++l) v *= (l == k) ? std::cos(th[l]) : std::sin(th[l]);
        if (i < m) v *= std::cos(th[i]);
      } else if (k == i && i < m) {
        for (int l = 0; l < last; ++l) v *= std::sin(th[l]);
        v *= -std::sin(th[i]);
      } else {
        v = 0.0;
      }
      d[i][k] = v;
    }
  }
  return d;
}

double chart_volume_factor(int n, std::span<const double> th) {
  // Euclidean surface element prod_k sin^{n-2-k} th_k.
  double v = 1.0;
  for (int k = 0; k < n - 2; ++k) v *= std::pow(std::sin(th[k]), n - 2 - k);
  return v;
}

Point quasi_sphere_point(const HomogeneousNorm& norm, const Point& u) {
  const double r = norm(u);
  Point y(u.n);
  for (int j = 0; j < u.n; ++j) y[j] = std::pow(r, -norm.weights()[j]) * u[j];
  return y;
}

void require_chart(int n, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != n - 1)
    throw Error(ErrorKind::invalid_argument, "sphere chart needs n-1 angles");
  if (n >= 3 && chart_volume_factor(n, theta) < 1e-12)
    throw Error(ErrorKind::chart_degenerate, "sphere chart is singular at these angles");
}

Rule1D angular_rule(double length, int quarters, int panels_per_quarter, int order) {
  const Rule1D base = gauss_legendre(order);
  const int panels = quarters * panels_per_quarter;
  const double h = length / panels;
  Rule1D r;
  for (int p = 0; p < panels; ++p)
    for (int i = 0; i < order; ++i) {
      r.nodes.push_back(p * h + 0.5 * h * (base.nodes[i] + 1.0));
      r.weights.push_back(0.5 * h * base.weights[i]);
    }
  return r;
}

}  // namespace

Point sphere_chart(int n, std::span<const double> th) {
  if (n < 2 || n > kMaxDim) throw Error(ErrorKind::invalid_argument, "sphere chart dimension out of range");
  Point u(n);
  double s = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    u[i] = s * std::cos(th[i]);
    s *= std::sin(th[i]);
  }
  u[n - 1] = s;
  return u;
}

double sphere_measure_density(const QuasiNorm& qn, const GroupSpec& g, std::span<const double> theta) {
  const int n = g.dim();
  require_chart(n, theta);
  HomogeneousNorm norm(qn, g);
  const Point u = sphere_chart(n, theta);
  const Matrix du = sphere_chart_jacobian(n, theta);
  std::array<double, kMaxDim> grad;
  const double r = norm.value_and_gradient(u, grad);
  Matrix j{};
  for (int i = 0; i < n; ++i) {
    const double nu = g.weights()[i];
    const double scale = std::pow(r, -nu);
    j[i][0] = nu * scale * u[i];
    for (int k = 0; k < n - 1; ++k) {
      double dr = 0.0;
      for (int l = 0; l < n; ++l) dr += grad[l] * du[l][k];
      j[i][k + 1] = scale * (du[i][k] - nu * u[i] * dr / r);
    }
  }
  const double d = std::abs(determinant(j, n));
  if (!std::isfinite(d)) throw Error(ErrorKind::chart_degenerate, "non-finite sphere density");
  return d;
}

double sphere_measure_density_fd(const QuasiNorm& qn, const GroupSpec& g, std::span<const double> theta) {
  const int n = g.dim();
  require_chart(n, theta);
  HomogeneousNorm norm(qn, g);
  const Point y = quasi_sphere_point(norm, sphere_chart(n, theta));
  Matrix j{};
  for (int i = 0; i < n; ++i) j[i][0] = g.weights()[i] * y[i];
  const double h = 1e-5;
  for (int k = 0; k < n - 1; ++k) {
    std::array<double, kMaxDim> tp{}, tm{}, tp2{}, tm2{};
    for (int l = 0; l < n - 1; ++l) tp[l] = tm[l] = tp2[l] = tm2[l] = theta[l];
    tp[k] += h;
    tm[k] -= h;
    tp2[k] += 0.5 * h;
    tm2[k] -= 0.5 * h;
    auto at = [&](const std::array<double, kMaxDim>& t) {
      return quasi_sphere_point(norm, sphere_chart(n, std::span<const double>(t.data(), n - 1)));
    };
    const Point a = at(tp), b = at(tm), a2 = at(tp2), b2 = at(tm2);
    for (int i = 0; i < n; ++i) {
      const double d1 = (a[i] - b[i]) / (2 * h), d2 = (a2[i] - b2[i]) / h;
      j[i][k + 1] = (4 * d2 - d1) / 3;
    }
  }
  return std::abs(determinant(j, n));
}

PolarScheme::PolarScheme(const GroupSpec& g, const QuasiNorm& qn, RadialRule radial, int angular_panels_per_quarter,
                         int angular_order, int workers)
    : group_(g),
      qn_(qn),
      radial_(radial),
      angular_panels_(angular_panels_per_quarter),
      angular_order_(angular_order),
      workers_(workers > 0 ? workers : default_worker_count()),
      q_(g.homogeneous_dimension()) {
  const int n = g.dim();
  if (n < 2) throw Error(ErrorKind::invalid_argument, "polar scheme needs dimension >= 2");
  if (!(radial.r_hi > radial.r_lo) || radial.r_lo < 0.0 || radial.panels < 1)
    throw Error(ErrorKind::invalid_argument, "invalid radial rule");
  if (radial.spacing == RadialSpacing::logarithmic && !(radial.r_lo > 0.0))
    throw Error(ErrorKind::invalid_argument, "logarithmic radial rule needs r_lo > 0");
  HomogeneousNorm norm(qn, g);

  // Angular tensor rule, split at multiples of pi/2 where chart coordinates vanish.
  std::vector<Rule1D> rules;
  for (int k = 0; k < n - 1; ++k) {
    const bool azimuth = (k == n - 2);
    rules.push_back(angular_rule(azimuth ? 2 * std::numbers::pi : std::numbers::pi, azimuth ? 4 : 2,
                                 angular_panels_per_quarter, angular_order));
  }
  std::size_t total = 1;
  for (const auto& r : rules) total *= r.nodes.size();
  sphere_.reserve(total);
  std::vector<double> masses;
  masses.reserve(total);
  std::array<double, kMaxDim> th{};
  for (std::size_t m = 0; m < total; ++m) {
    std::size_t rem = m;
    double w = 1.0;
    for (int k = n - 2; k >= 0; --k) {
      const std::size_t sz = rules[k].nodes.size();
      const std::size_t i = rem % sz;
      rem /= sz;
      th[k] = rules[k].nodes[i];
      w *= rules[k].weights[i];
    }
    std::span<const double> theta(th.data(), n - 1);
    const double dens = sphere_measure_density(qn, g, theta);
    if (!(dens >= 0.0)) throw Error(ErrorKind::chart_degenerate, "negative sphere density");
    const Point y = quasi_sphere_point(norm, sphere_chart(n, theta));
    sphere_.push_back(SphereNode{y, w * dens});
    masses.push_back(w * dens);
  }
  mass_ = pairwise_sum(masses);
  if (!(mass_ > 0.0)) throw Error(ErrorKind::chart_degenerate, "quasi-sphere has no mass");

  const Rule1D base = gauss_legendre(radial.order);
  const bool logr = radial.spacing == RadialSpacing::logarithmic;
  const double a = logr ? std::log(radial.r_lo) : radial.r_lo;
  const double b = logr ? std::log(radial.r_hi) : radial.r_hi;
  const double h = (b - a) / radial.panels;
  for (int p = 0; p < radial.panels; ++p)
    for (int i = 0; i < radial.order; ++i) {
      const double t = a + p * h + 0.5 * h * (base.nodes[i] + 1.0);
      const double w = 0.5 * h * base.weights[i];
      const double r = logr ? std::exp(t) : t;
      r_nodes_.push_back(r);
      r_weights_.push_back((logr ? w * r : w) * std::pow(r, q_ - 1.0));
    }
}

PolarScheme PolarScheme::for_fields(const GroupSpec& g, const QuasiNorm& qn, std::span<const ScalarField> fields,
                                    int radial_panels, int angular_panels_per_quarter, int order, int workers) {
  HomogeneousNorm norm(qn, g);
  Point corner(g.dim());
  double r_lo = std::numeric_limits<double>::infinity();
  for (const auto& f : fields) {
    for (int j = 0; j < g.dim(); ++j) corner[j] = std::max(corner[j], f.traits().extent[j]);
    r_lo = std::min(r_lo, f.vanishes_near_origin() ? f.traits().r_min : 0.0);
  }
  if (!corner.all_finite()) throw Error(ErrorKind::truncation_error, "fields do not declare finite extents");
  RadialRule rr{std::isfinite(r_lo) ? r_lo : 0.0, norm(corner), radial_panels, order, RadialSpacing::linear};
  return PolarScheme(g, qn, rr, angular_panels_per_quarter, order, workers);
}

std::vector<double> PolarScheme::integrate(const Integrand& fn, int k) const {
  const int n = group_.dim();
  const std::size_t nr = r_nodes_.size();
  std::vector<std::vector<double>> rows(nr);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto body = [&] {
    std::vector<double> vals(k);
    std::vector<std::vector<double>> terms(k, std::vector<double>(sphere_.size()));
    for (;;) {
      const std::size_t ir = next.fetch_add(1);
      if (ir >= nr) return;
      const double r = r_nodes_[ir];
      std::array<double, kMaxDim> scale{};
      for (int j = 0; j < n; ++j) scale[j] = std::pow(r, group_.weights()[j]);
      for (std::size_t s = 0; s < sphere_.size(); ++s) {
        Point x(n);
        for (int j = 0; j < n; ++j) x[j] = scale[j] * sphere_[s].y[j];
        std::fill(vals.begin(), vals.end(), 0.0);
        fn(x, vals);
        for (int c = 0; c < k; ++c) terms[c][s] = vals[c] * sphere_[s].weight;
      }
      rows[ir].resize(k);
      for (int c = 0; c < k; ++c) rows[ir][c] = r_weights_[ir] * pairwise_sum(terms[c]);
    }
  };
  auto work = [&] {
    try {
      body();
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(nr);
    }
  };
  const int nw = std::min<int>(workers_, static_cast<int>(nr));
  if (nw <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nw; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<double> out(k), column(nr);
  for (int c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < nr; ++i) column[i] = rows[i][c];
    out[c] = pairwise_sum(column);
  }
  return out;
}

std::string PolarScheme::describe() const {
  std::ostringstream os;
  os << "radial=[" << radial_.r_lo << "," << radial_.r_hi << "] panels=" << radial_.panels
     << " order=" << radial_.order << (radial_.spacing == RadialSpacing::logarithmic ? " log" : " linear")
     << "; angular panels/quarter=" << angular_panels_ << " order=" << angular_order_;
  return os.str();
}

cplx polar_integral(const PolarScheme& ps, const ScalarField& f) {
  auto v = ps.integrate(
      [&](const Point& x, std::span<double> out) {
        const cplx z = f(x);
        out[0] = z.real();
        out[1] = z.imag();
      },
      2);
  return {v[0], v[1]};
}

double polar_identity_residual(const QuadratureScheme& q, const PolarScheme& ps, const ScalarField& f) {
  q.require_decay(f);
  auto cart = q.integrate(
      [&](const Point& x, std::span<double> out) {
        const cplx z = f(x);
        out[0] = z.real();
        out[1] = z.imag();
      },
      2, false);
  const cplx c(cart.value[0], cart.value[1]);
  const cplx p = polar_integral(ps, f);
  return std::abs(c - p) / (1.0 + std::abs(c));
}

}  // namespace hgcalc
