#include "hgcalc/group.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "hgcalc/error.hpp"
#include "hgcalc/field.hpp"

namespace hgcalc {

// ---------------------------------------------------------------------------
// DilationWeights

DilationWeights::DilationWeights(std::vector<double> nu) : nu_(std::move(nu)) {
  if (nu_.empty() || static_cast<int>(nu_.size()) > kMaxDim)
    throw Error(ErrorKind::invalid_argument, "dimension must be between 1 and " + std::to_string(kMaxDim));
  q_ = 0.0;
  for (double v : nu_) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::invalid_argument, "dilation weights must be positive and finite");
    q_ += v;
  }
}

bool DilationWeights::isotropic() const {
  return std::all_of(nu_.begin(), nu_.end(), [&](double v) { return v == nu_.front(); });
}

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::abelian: return "abelian";
    case GroupKind::heisenberg: return "heisenberg";
    case GroupKind::custom: return "custom";
  }
  return "custom";
}

// ---------------------------------------------------------------------------
// Construction

namespace {

std::string default_abelian_name(const std::vector<double>& nu) {
  std::ostringstream os;
  os << "abelian_r" << nu.size() << "_nu";
  for (double v : nu) os << "_" << v;
  return os.str();
}

std::span<const double> two_points(std::array<double, 2 * kMaxDim>& buf, const Point& x, const Point& y) {
  for (int i = 0; i < x.n; ++i) {
    buf[i] = x[i];
    buf[x.n + i] = y[i];
  }
  return {buf.data(), static_cast<std::size_t>(2 * x.n)};
}

Point random_point(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point p(n);
  for (int i = 0; i < n; ++i) p[i] = u(rng);
  return p;
}

double rel_diff(const Point& a, const Point& b) {
  double m = 1.0;
  for (int i = 0; i < a.n; ++i) m = std::max({m, std::abs(a[i]), std::abs(b[i])});
  return max_abs_diff(a, b) / m;
}

void check_shapes(const GroupData& d) {
  const int n = static_cast<int>(d.nu.size());
  auto bad = [](const std::string& what) { throw Error(ErrorKind::invalid_group, what); };
  if (static_cast<int>(d.product.size()) != n) bad("product must have n components");
  if (static_cast<int>(d.inverse.size()) != n) bad("inverse must have n components");
  if (static_cast<int>(d.exp_inverse.size()) != n) bad("exp_inverse must have n components");
  if (static_cast<int>(d.frame.size()) != n) bad("frame must have n vector fields");
  for (const auto& p : d.product)
    if (p.nvars() != 2 * n) bad("product components must be polynomials in 2n variables");
  for (const auto& p : d.inverse)
    if (p.nvars() != n) bad("inverse components must be polynomials in n variables");
  for (const auto& p : d.exp_inverse)
    if (p.nvars() != n) bad("exp_inverse components must be polynomials in n variables");
  for (const auto& row : d.frame) {
    if (static_cast<int>(row.size()) != n) bad("each frame field needs n coefficients");
    for (const auto& p : row)
      if (p.nvars() != n) bad("frame coefficients must be polynomials in n variables");
  }
}

// Returns the name of the first violated invariant, if any.
std::optional<std::string> first_violation(const GroupSpec& g) {
  const int n = g.dim();
  const auto& nu = g.weights().nu();
  std::mt19937_64 rng(0x5eed1234ULL);
  std::uniform_real_distribution<double> lam(0.3, 3.0);

  for (int k = 0; k < 32; ++k) {
    Point x = random_point(rng, n, 1.5), y = random_point(rng, n, 1.5), z = random_point(rng, n, 1.5);
    if (rel_diff(g.product(x, g.origin()), x) > 1e-12 || rel_diff(g.product(g.origin(), x), x) > 1e-12)
      return "identity: product(x, origin) = x";
    if (rel_diff(g.product(x, g.inverse(x)), g.origin()) > 1e-12)
      return "inverse: product(x, inverse(x)) = origin";
    if (rel_diff(g.product(g.product(x, y), z), g.product(x, g.product(y, z))) > 1e-12)
      return "associativity: (xy)z = x(yz)";
    double l = lam(rng);
    if (rel_diff(dilate(g, l, g.product(x, y)), g.product(dilate(g, l, x), dilate(g, l, y))) > 1e-12)
      return "automorphism: D_lambda(xy) = D_lambda(x) D_lambda(y)";
    Point ex = g.exp_inverse(x), edx = g.exp_inverse(dilate(g, l, x));
    if (rel_diff(edx, dilate(g, l, ex)) > 1e-12)
      return "exp scaling: e(D_r x) = (r^{nu_j} e_j(x))";
  }

  const auto& d = g.data();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (!d.frame[j][k].is_weighted_homogeneous(nu, nu[k] - nu[j], 1e-9))
        return "frame homogeneity: X_" + std::to_string(j + 1) + " is not homogeneous of degree nu_" +
               std::to_string(j + 1);

  // Left invariance: X_j(x) = d/dy [x * y]|_{y=0} applied to X_j(0).
  for (int k = 0; k < 16; ++k) {
    Point x = random_point(rng, n, 1.5);
    auto c0 = g.frame_at(g.origin());
    auto cx = g.frame_at(x);
    std::array<double, 2 * kMaxDim> buf{};
    auto xy = two_points(buf, x, g.origin());
    for (int j = 0; j < n; ++j)
      for (int comp = 0; comp < n; ++comp) {
        double v = 0.0;
        for (int m = 0; m < n; ++m) v += d.product[comp].derivative(n + m)(xy) * c0[j][m];
        if (std::abs(v - cx[j][comp]) > 1e-10 * (1.0 + std::abs(v)))
          return "left invariance: frame field X_" + std::to_string(j + 1) + " is not left-invariant";
      }
  }

  try {
    (void)frame_change_polynomials(g);
  } catch (const Error& e) {
    return std::string("frame invertibility: ") + e.what();
  }

  for (int k = 0; k < 8; ++k) {
    Point x = random_point(rng, n, 1.0);
    try {
      if (rel_diff(exp_map(g, exp_coords(g, x)), x) > 1e-10)
        return "exp consistency: exp_map(e(x)) = x";
    } catch (const Error&) {
      return "exp consistency: flow integration failed";
    }
  }
  return std::nullopt;
}

}  // namespace

GroupSpec::GroupSpec(GroupData data, GroupKind kind)
    : data_(std::move(data)), weights_(data_.nu), kind_(kind) {
  check_shapes(data_);
}

GroupSpec GroupSpec::abelian(std::vector<double> nu, std::string name) {
  const int n = static_cast<int>(nu.size());
  DilationWeights w(nu);  // validates
  GroupData d;
  d.name = name.empty() ? default_abelian_name(nu) : std::move(name);
  d.nu = std::move(nu);
  for (int k = 0; k < n; ++k) {
    d.product.push_back(Polynomial::variable(2 * n, k) + Polynomial::variable(2 * n, n + k));
    d.inverse.push_back(Polynomial::variable(n, k) * -1.0);
    d.exp_inverse.push_back(Polynomial::variable(n, k));
  }
  d.frame.assign(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (int j = 0; j < n; ++j) d.frame[j][j] = Polynomial::constant(n, 1.0);
  return GroupSpec(std::move(d), GroupKind::abelian);
}

GroupSpec GroupSpec::heisenberg() {
  constexpr int n = 3;
  auto x = [](int k) { return Polynomial::variable(2 * n, k); };
  auto y = [](int k) { return Polynomial::variable(2 * n, n + k); };
  auto v = [](int k) { return Polynomial::variable(n, k); };
  GroupData d;
  d.name = "heisenberg";
  d.nu = {1.0, 1.0, 2.0};
  d.product = {x(0) + y(0), x(1) + y(1), x(2) + y(2) + 2.0 * (x(1) * y(0)) - 2.0 * (x(0) * y(1))};
  d.inverse = {v(0) * -1.0, v(1) * -1.0, v(2) * -1.0};
  d.exp_inverse = {v(0), v(1), v(2) * -0.25};
  d.frame.assign(n, std::vector<Polynomial>(n, Polynomial(n)));
  d.frame[0][0] = Polynomial::constant(n, 1.0);
  d.frame[0][2] = 2.0 * v(1);
  d.frame[1][1] = Polynomial::constant(n, 1.0);
  d.frame[1][2] = -2.0 * v(0);
  d.frame[2][2] = Polynomial::constant(n, -4.0);
  return GroupSpec(std::move(d), GroupKind::heisenberg);
}

GroupSpec GroupSpec::custom(GroupData data) {
  if (data.name.empty()) data.name = "custom";
  GroupSpec g(std::move(data), GroupKind::custom);
  if (auto v = first_violation(g)) throw Error(ErrorKind::invalid_group, *v);
  return g;
}

// ---------------------------------------------------------------------------
// Evaluation

Point GroupSpec::product(const Point& x, const Point& y) const {
  std::array<double, 2 * kMaxDim> buf{};
  auto xy = two_points(buf, x, y);
  Point r(dim());
  for (int k = 0; k < dim(); ++k) r[k] = data_.product[k](xy);
  return r;
}

Point GroupSpec::inverse(const Point& x) const {
  Point r(dim());
  for (int k = 0; k < dim(); ++k) r[k] = data_.inverse[k](x.span());
  return r;
}

Vector GroupSpec::exp_inverse(const Point& x) const {
  Vector r(dim());
  for (int k = 0; k < dim(); ++k) r[k] = data_.exp_inverse[k](x.span());
  return r;
}

std::array<std::array<double, kMaxDim>, kMaxDim> GroupSpec::frame_at(const Point& x) const {
  std::array<std::array<double, kMaxDim>, kMaxDim> c{};
  for (int j = 0; j < dim(); ++j)
    for (int k = 0; k < dim(); ++k)
      if (!data_.frame[j][k].is_zero()) c[j][k] = data_.frame[j][k](x.span());
  return c;
}

cplx GroupSpec::apply_frame(int j, const Point& x, std::span<const cplx> gradient) const {
  cplx s{};
  for (int k = 0; k < dim(); ++k) {
    const auto& p = data_.frame[j][k];
    if (!p.is_zero()) s += p(x.span()) * gradient[k];
  }
  return s;
}

Point dilate(const GroupSpec& g, double lambda, const Point& x) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::invalid_argument, "dilation parameter must be positive");
  Point r(g.dim());
  for (int k = 0; k < g.dim(); ++k) {
    const double nu = g.weights()[k];
    r[k] = (nu == 1.0 ? lambda : nu == 2.0 ? lambda * lambda : std::pow(lambda, nu)) * x[k];
  }
  return r;
}

Point group_product(const GroupSpec& g, const Point& x, const Point& y) { return g.product(x, y); }

Vector exp_coords(const GroupSpec& g, const Point& x) { return g.exp_inverse(x); }

Point exp_map(const GroupSpec& g, const Vector& a) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  const int n = g.dim();
  if (a.n != n) throw Error(ErrorKind::invalid_argument, "exp_map: vector has wrong dimension");

  auto rhs = [&](const State& s, State& ds, double /*t*/) {
    Point p(n);
    for (int k = 0; k < n; ++k) p[k] = s[k];
    auto c = g.frame_at(p);
    for (int k = 0; k < n; ++k) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += a[j] * c[j][k];
      ds[k] = v;
    }
  };
  State s(n, 0.0);
  try {
    auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(1e-14, 1e-14);
    odeint::integrate_adaptive(stepper, rhs, s, 0.0, 1.0, 0.05);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::numeric_failure, std::string("exp_map integration failed: ") + e.what());
  }
  Point r(n);
  for (int k = 0; k < n; ++k) r[k] = s[k];
  if (!r.all_finite()) throw Error(ErrorKind::numeric_failure, "exp_map produced non-finite coordinates");
  return r;
}

cplx vector_field_apply(const GroupSpec& g, int j, const ScalarField& f, const Point& x) {
  if (j < 0 || j >= g.dim()) throw Error(ErrorKind::invalid_argument, "vector field index out of range");
  Jet jet = f.jet(x);
  return g.apply_frame(j, x, std::span<const cplx>(jet.grad.data(), g.dim()));
}

PolynomialMatrix frame_change_polynomials(const GroupSpec& g) {
  const int n = g.dim();
  const auto& c = g.data().frame;
  const auto& nu = g.weights().nu();

  std::vector<double> diag(n);
  for (int j = 0; j < n; ++j) {
    if (!c[j][j].is_constant() || c[j][j].constant_term() == 0.0)
      throw Error(ErrorKind::invalid_group, "frame coefficient c_{" + std::to_string(j + 1) + "," +
                                                std::to_string(j + 1) + "} must be a nonzero constant");
    diag[j] = c[j][j].constant_term();
    for (int k = 0; k < n; ++k)
      if (k != j && !c[j][k].is_zero() && !(nu[k] > nu[j]))
        throw Error(ErrorKind::invalid_group,
                    "frame is not triangular in the weight order (c_{" + std::to_string(j + 1) + "," +
                        std::to_string(k + 1) + "} nonzero with nu_k <= nu_j)");
  }

  // C = D (I + M) with M strictly increasing in weight, hence nilpotent:
  // C^{-1} = (sum_{m<n} (-M)^m) D^{-1}.
  auto zero = [&] { return PolynomialMatrix(n, std::vector<Polynomial>(n, Polynomial(n))); };
  auto identity = [&] {
    auto m = zero();
    for (int j = 0; j < n; ++j) m[j][j] = Polynomial::constant(n, 1.0);
    return m;
  };
  auto mul = [&](const PolynomialMatrix& a, const PolynomialMatrix& b) {
    auto r = zero();
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (a[i][k].is_zero()) continue;
        for (int j = 0; j < n; ++j)
          if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
      }
    return r;
  };

  auto neg_m = zero();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (k != j) neg_m[j][k] = c[j][k] * (-1.0 / diag[j]);

  auto sum = identity();
  auto power = identity();
  for (int m = 1; m < n; ++m) {
    power = mul(power, neg_m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum[i][j] += power[i][j];
  }
  auto p = zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[i][j] = sum[i][j] * (1.0 / diag[j]);

  auto check = mul(p, c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto d = check[i][j] - Polynomial::constant(n, i == j ? 1.0 : 0.0);
      if (!d.is_zero()) throw Error(ErrorKind::numeric_failure, "frame inversion did not reproduce identity");
    }
  return p;
}

}  // namespace hgcalc
