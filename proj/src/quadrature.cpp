#include "hgcalc/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "hgcalc/error.hpp"

namespace hgcalc {

Rule1D gauss_legendre(int order) {
  if (order < 1 || order > 256) throw Error(ErrorKind::invalid_argument, "Gauss-Legendre order out of range");
  Rule1D r;
  r.nodes.assign(order, 0.0);
  r.weights.assign(order, 0.0);
  if (order == 1) {
    r.weights[0] = 2.0;
    return r;
  }
  // P_n(z) and P_n'(z) by the three-term recurrence.
  auto legendre = [order](double z) {
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, order * (z * p1 - p0) / (z * z - 1.0)};
  };
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre(z).second;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = -z;
    r.nodes[order - 1 - i] = z;
    r.weights[i] = w;
    r.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) r.nodes[order / 2] = 0.0;
  return r;
}

Rule1D composite_axis_rule(double half_width, int panels_per_half, int order, double grade) {
  if (!(half_width > 0.0) || panels_per_half < 1 || !(grade >= 1.0))
    throw Error(ErrorKind::invalid_argument, "invalid axis rule parameters");
  const Rule1D base = gauss_legendre(order);
  const double s_max = std::pow(half_width, 1.0 / grade);
  const double h = s_max / panels_per_half;
  Rule1D r;
  r.nodes.reserve(2 * panels_per_half * order);
  r.weights.reserve(2 * panels_per_half * order);
  for (int p = -panels_per_half; p < panels_per_half; ++p) {
    const double a = p * h;
    for (int i = 0; i < order; ++i) {
      const double s = a + 0.5 * h * (base.nodes[i] + 1.0);
      const double as = std::abs(s);
      const double x = std::copysign(grade == 1.0 ? as : std::pow(as, grade), s);
      const double jac = grade == 1.0 ? 1.0 : grade * std::pow(as, grade - 1.0);
      r.nodes.push_back(x);
      r.weights.push_back(0.5 * h * base.weights[i] * jac);
    }
  }
  return r;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

int default_worker_count() {
  if (const char* env = std::getenv("HGCALC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Streaming pairwise accumulator over k channels: blocks of 16 terms are
// summed directly and merged like a binary counter, so the association
// order depends only on the term index.
class Cascade {
 public:
  explicit Cascade(int k) : k_(k), block_(k, 0.0) {}

  void add(std::span<const double> v) {
    for (int c = 0; c < k_; ++c) block_[c] += v[c];
    if (++in_block_ == 16) flush_block();
  }

  std::vector<double> finish() {
    if (in_block_ > 0) flush_block();
    std::vector<double> total(k_, 0.0);
    bool any = false;
    for (auto& lvl : levels_) {
      if (!lvl.used) continue;
      if (!any) {
        total = lvl.sum;
        any = true;
      } else {
        for (int c = 0; c < k_; ++c) total[c] = lvl.sum[c] + total[c];
      }
    }
    return total;
  }

 private:
  struct Level {
    std::vector<double> sum;
    bool used = false;
  };

  void flush_block() {
    std::vector<double> carry = block_;
    std::fill(block_.begin(), block_.end(), 0.0);
    in_block_ = 0;
    for (std::size_t l = 0;; ++l) {
      if (l == levels_.size()) levels_.push_back(Level{std::vector<double>(k_, 0.0), false});
      if (!levels_[l].used) {
        levels_[l].sum = std::move(carry);
        levels_[l].used = true;
        return;
      }
      for (int c = 0; c < k_; ++c) carry[c] = levels_[l].sum[c] + carry[c];
      levels_[l].used = false;
    }
  }

  int k_;
  std::vector<double> block_;
  int in_block_ = 0;
  std::vector<Level> levels_;
};

}  // namespace

QuadratureScheme::QuadratureScheme(std::vector<AxisSpec> axes, double target_tol, int workers)
    : axes_(std::move(axes)), target_tol_(target_tol), workers_(workers > 0 ? workers : default_worker_count()) {
  if (axes_.empty() || static_cast<int>(axes_.size()) > kMaxDim)
    throw Error(ErrorKind::invalid_argument, "quadrature dimension out of range");
  if (!(target_tol_ > 0.0)) throw Error(ErrorKind::invalid_argument, "target tolerance must be positive");
  for (const auto& a : axes_) {
    fine_.push_back(composite_axis_rule(a.half_width, a.panels_per_half, a.order, a.grade));
    const int mid = std::max(1, a.panels_per_half / 2), low = std::max(1, a.panels_per_half / 4);
    coarse_.push_back(composite_axis_rule(a.half_width, mid, a.order, a.grade));
    coarsest_.push_back(composite_axis_rule(a.half_width, low, a.order, a.grade));
  }
}

QuadratureScheme QuadratureScheme::for_fields(const GroupSpec& g, std::span<const ScalarField> fields,
                                              int panels_per_half, int order, double target_tol, int workers) {
  std::vector<AxisSpec> axes(g.dim());
  for (int j = 0; j < g.dim(); ++j) {
    double w = 0.0;
    for (const auto& f : fields) w = std::max(w, f.traits().extent[j]);
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::truncation_error, "fields do not declare a finite extent along axis " +
                                                   std::to_string(j + 1));
    axes[j] = AxisSpec{w, panels_per_half, order, std::max(1.0, g.weights()[j])};
  }
  return QuadratureScheme(std::move(axes), target_tol, workers);
}

std::size_t QuadratureScheme::node_count() const {
  std::size_t c = 1;
  for (const auto& r : fine_) c *= r.nodes.size();
  return c;
}

std::vector<double> QuadratureScheme::run(const std::vector<Rule1D>& rules, const Integrand& fn, int k) const {
  const int n = dim();
  const std::size_t outer = rules[0].nodes.size();
  std::size_t inner = 1;
  for (int a = 1; a < n; ++a) inner *= rules[a].nodes.size();

  std::vector<std::vector<double>> slices(outer);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto body = [&] {
    std::vector<double> vals(k);
    for (;;) {
      const std::size_t i0 = next.fetch_add(1);
      if (i0 >= outer) return;
      Cascade acc(k);
      Point x(n);
      x[0] = rules[0].nodes[i0];
      const double w0 = rules[0].weights[i0];
      std::array<std::size_t, kMaxDim> idx{};
      for (std::size_t m = 0; m < inner; ++m) {
        std::size_t rem = m;
        double w = w0;
        for (int a = n - 1; a >= 1; --a) {
          const std::size_t sz = rules[a].nodes.size();
          idx[a] = rem % sz;
          rem /= sz;
          x[a] = rules[a].nodes[idx[a]];
          w *= rules[a].weights[idx[a]];
        }
        std::fill(vals.begin(), vals.end(), 0.0);
        fn(x, vals);
        for (double& v : vals) v *= w;
        acc.add(vals);
      }
      slices[i0] = acc.finish();
    }
  };
  auto work = [&] {
    try {
      body();
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(outer);
    }
  };

  const int nw = std::min<int>(workers_, static_cast<int>(outer));
  if (nw <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nw; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> out(k);
  std::vector<double> column(outer);
  for (int c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < outer; ++i) column[i] = slices[i][c];
    out[c] = pairwise_sum(column);
  }
  return out;
}

IntegrationResult QuadratureScheme::integrate(const Integrand& fn, int k, bool estimate_error) const {
  IntegrationResult r;
  r.value = run(fine_, fn, k);
  r.error_estimate.assign(k, 0.0);
  if (estimate_error) {
    // Differences along the panel ladder N, N/2, N/4; with geometric
    // convergence the fine rule's error is about d1 * (d1 / d2).
    const auto mid = run(coarse_, fn, k);
    const auto low = run(coarsest_, fn, k);
    for (int c = 0; c < k; ++c) {
      const double d1 = std::abs(r.value[c] - mid[c]);
      const double d2 = std::abs(mid[c] - low[c]);
      r.error_estimate[c] = d2 > 0.0 ? d1 * std::min(1.0, d1 / d2) : d1;
    }
  }
  for (double v : r.value)
    if (!std::isfinite(v)) throw Error(ErrorKind::numeric_failure, "non-finite quadrature sum");
  return r;
}

void QuadratureScheme::require_decay(const ScalarField& f) const {
  const int n = dim();
  std::mt19937_64 rng(0xdecaULL);
  double peak = 0.0;
  for (int s = 0; s < 256; ++s) {
    Point x(n);
    for (int a = 0; a < n; ++a) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      const double t = u(rng);
      x[a] = 0.5 * t * std::min(axes_[a].half_width, 4.0);
    }
    peak = std::max(peak, std::abs(f(x)));
  }
  // The integrands are quadratic in f, so the bound applies to |f|^2.
  const double limit = 1e-8 * std::max(peak, 1e-300);
  for (int face = 0; face < 2 * n; ++face) {
    for (int s = 0; s < 64; ++s) {
      Point x(n);
      for (int a = 0; a < n; ++a) {
        std::uniform_real_distribution<double> u(-axes_[a].half_width, axes_[a].half_width);
        x[a] = u(rng);
      }
      x[face / 2] = (face % 2 ? 1.0 : -1.0) * axes_[face / 2].half_width;
      if (std::abs(f(x)) > limit)
        throw Error(ErrorKind::truncation_error, "field '" + f.id() + "' does not decay on the box boundary");
    }
  }
}

std::string QuadratureScheme::describe() const {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (a) os << "; ";
    os << "axis" << a + 1 << ": half_width=" << axes_[a].half_width << " panels=" << 2 * axes_[a].panels_per_half
       << " order=" << axes_[a].order << " grade=" << axes_[a].grade;
  }
  return os.str();
}

cplx l2_inner(const QuadratureScheme& q, const ScalarField& f, const ScalarField& h) {
  q.require_decay(f);
  q.require_decay(h);
  auto r = q.integrate(
      [&](const Point& x, std::span<double> out) {
        const cplx v = f(x) * std::conj(h(x));
        out[0] = v.real();
        out[1] = v.imag();
      },
      2);
  const cplx value(r.value[0], r.value[1]);
  const double est = std::hypot(r.error_estimate[0], r.error_estimate[1]);
  if (est > q.target_tol() * std::max(1.0, std::abs(value)))
    throw Error(ErrorKind::refine_needed, "inner product error estimate exceeds the scheme tolerance");
  return value;
}

double l2_norm(const QuadratureScheme& q, const ScalarField& f) {
  return std::sqrt(std::max(0.0, l2_inner(q, f, f).real()));
}

}  // namespace hgcalc
