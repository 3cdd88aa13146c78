#include "hgcalc/quasi_norm.hpp"

#include <cmath>
#include <sstream>

#include "hgcalc/error.hpp"

namespace hgcalc {

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

}  // namespace

QuasiNorm QuasiNorm::p_family(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_argument, "p_family requires p >= 1");
  return {QuasiNormKind::p_family, p};
}
QuasiNorm QuasiNorm::koranyi() { return {QuasiNormKind::koranyi, 4.0}; }
QuasiNorm QuasiNorm::euclidean() { return {QuasiNormKind::euclidean, 2.0}; }

std::string QuasiNorm::id() const {
  switch (kind_) {
    case QuasiNormKind::koranyi: return "koranyi";
    case QuasiNormKind::euclidean: return "euclidean";
    case QuasiNormKind::p_family: {
      std::ostringstream os;
      os << "p" << p_;
      return os.str();
    }
  }
  return "?";
}

QuasiNorm parse_quasi_norm(const std::string& id) {
  if (id == "koranyi") return QuasiNorm::koranyi();
  if (id == "euclidean") return QuasiNorm::euclidean();
  if (id.size() > 1 && id[0] == 'p') {
    try {
      std::size_t used = 0;
      double p = std::stod(id.substr(1), &used);
      if (used == id.size() - 1) return QuasiNorm::p_family(p);
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorKind::invalid_argument, "unknown quasi-norm '" + id + "'");
}

std::string incompatibility(const QuasiNorm& qn, const GroupSpec& g) {
  switch (qn.kind()) {
    case QuasiNormKind::koranyi:
      if (g.kind() != GroupKind::heisenberg) return "koranyi norm requires the heisenberg group";
      return {};
    case QuasiNormKind::euclidean:
      for (double v : g.weights().nu())
        if (v != 1.0) return "euclidean norm requires unit dilation weights";
      return {};
    case QuasiNormKind::p_family:
      return {};
  }
  return "unknown quasi-norm";
}

HomogeneousNorm::HomogeneousNorm(const QuasiNorm& qn, const GroupSpec& g) : qn_(qn), n_(g.dim()) {
  if (auto why = incompatibility(qn, g); !why.empty()) throw Error(ErrorKind::invalid_argument, why);
  for (int j = 0; j < n_; ++j) {
    nu_[j] = g.weights()[j];
    expo_[j] = qn.p() / nu_[j];
    const double r = std::round(expo_[j]);
    int_expo_[j] = (std::abs(expo_[j] - r) < 1e-15 && r >= 1.0 && r < 64.0) ? static_cast<int>(r) : -1;
  }
}

double HomogeneousNorm::smooth_power() const { return qn_.p(); }

double HomogeneousNorm::operator()(const Point& x) const {
  switch (qn_.kind()) {
    case QuasiNormKind::euclidean: {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += x[j] * x[j];
      return std::sqrt(s);
    }
    case QuasiNormKind::koranyi: {
      const double h = x[0] * x[0] + x[1] * x[1];
      return std::sqrt(std::sqrt(h * h + x[2] * x[2]));
    }
    case QuasiNormKind::p_family: {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) {
        const double a = std::abs(x[j]);
        s += int_expo_[j] > 0 ? ipow(a, int_expo_[j]) : std::pow(a, expo_[j]);
      }
      const double p = qn_.p();
      return p == 2.0 ? std::sqrt(s) : p == 4.0 ? std::sqrt(std::sqrt(s)) : std::pow(s, 1.0 / p);
    }
  }
  return 0.0;
}

double HomogeneousNorm::value_and_gradient(const Point& x, std::array<double, kMaxDim>& grad) const {
  grad.fill(0.0);
  const double r = (*this)(x);
  if (r == 0.0) return 0.0;
  switch (qn_.kind()) {
    case QuasiNormKind::euclidean:
      for (int j = 0; j < n_; ++j) grad[j] = x[j] / r;
      break;
    case QuasiNormKind::koranyi: {
      // r^4 = h^2 + x3^2, h = x1^2 + x2^2
      const double h = x[0] * x[0] + x[1] * x[1];
      const double r3 = r * r * r;
      grad[0] = x[0] * h / r3;
      grad[1] = x[1] * h / r3;
      grad[2] = x[2] / (2.0 * r3);
      break;
    }
    case QuasiNormKind::p_family: {
      // d|x|/dx_j = |x_j|^{p/nu_j - 1} sgn(x_j) / (nu_j |x|^{p-1})
      const double p = qn_.p();
      const double denom = p == 2.0 ? r : p == 4.0 ? r * r * r : std::pow(r, p - 1.0);
      for (int j = 0; j < n_; ++j) {
        const double a = std::abs(x[j]);
        if (a == 0.0) continue;
        const double e = expo_[j] - 1.0;
        const double t = int_expo_[j] > 0 ? ipow(a, int_expo_[j] - 1) : std::pow(a, e);
        grad[j] = std::copysign(t, x[j]) / (nu_[j] * denom);
      }
      break;
    }
  }
  return r;
}

double quasi_norm(const QuasiNorm& qn, const GroupSpec& g, const Point& x) {
  return HomogeneousNorm(qn, g)(x);
}

}  // namespace hgcalc
