#include "hgcalc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgcalc/error.hpp"

namespace hgcalc {

namespace {

// Coefficients below this are treated as cancellation residue.
constexpr double kPruneTol = 1e-14;

bool pow_less(const Monomial& a, const Monomial& b) { return a.pow < b.pow; }

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

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxPolyVars)
    throw Error(ErrorKind::invalid_argument, "polynomial variable count out of range");
}

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  if (c != 0.0) p.terms_.push_back(Monomial{c, {}});
  return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
  Polynomial p(nvars);
  if (var < 0 || var >= nvars) throw Error(ErrorKind::invalid_argument, "variable index out of range");
  Monomial m{1.0, {}};
  m.pow[var] = 1;
  p.terms_.push_back(m);
  return p;
}

Polynomial Polynomial::monomial(int nvars, double coef, std::span<const int> pow) {
  Polynomial p(nvars);
  if (static_cast<int>(pow.size()) != nvars)
    throw Error(ErrorKind::invalid_argument, "monomial exponent length does not match variable count");
  Monomial m{coef, {}};
  for (int i = 0; i < nvars; ++i) {
    if (pow[i] < 0 || pow[i] > 255) throw Error(ErrorKind::invalid_argument, "monomial exponent out of range");
    m.pow[i] = static_cast<std::uint8_t>(pow[i]);
  }
  p.terms_.push_back(m);
  p.canonicalize();
  return p;
}

bool Polynomial::is_constant() const {
  for (const auto& t : terms_)
    for (int i = 0; i < nvars_; ++i)
      if (t.pow[i] != 0) return false;
  return true;
}

double Polynomial::constant_term() const {
  for (const auto& t : terms_) {
    bool c = true;
    for (int i = 0; i < nvars_; ++i) c = c && t.pow[i] == 0;
    if (c) return t.coef;
  }
  return 0.0;
}

double Polynomial::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = t.coef;
    for (int i = 0; i < nvars_; ++i)
      if (t.pow[i]) v *= ipow(x[i], t.pow[i]);
    s += v;
  }
  return s;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial d(nvars_);
  for (const auto& t : terms_) {
    if (t.pow[var] == 0) continue;
    Monomial m = t;
    m.coef *= t.pow[var];
    m.pow[var] -= 1;
    d.terms_.push_back(m);
  }
  d.canonicalize();
  return d;
}

Polynomial Polynomial::scaled(std::span<const double> scale) const {
  Polynomial r = *this;
  for (auto& t : r.terms_)
    for (int i = 0; i < nvars_; ++i) t.coef *= ipow(scale[i], t.pow[i]);
  r.canonicalize();
  return r;
}

std::vector<double> Polynomial::weighted_degrees(std::span<const double> weights) const {
  std::vector<double> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    double d = 0.0;
    for (int i = 0; i < nvars_; ++i) d += t.pow[i] * weights[i];
    out.push_back(d);
  }
  return out;
}

bool Polynomial::is_weighted_homogeneous(std::span<const double> weights, double degree,
                                         double tol) const {
  for (double d : weighted_degrees(weights))
    if (std::abs(d - degree) > tol) return false;
  return true;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::invalid_argument, "polynomial arity mismatch");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::invalid_argument, "polynomial arity mismatch");
  for (auto t : o.terms_) {
    t.coef = -t.coef;
    terms_.push_back(t);
  }
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto& t : terms_) t.coef *= s;
  canonicalize();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw Error(ErrorKind::invalid_argument, "polynomial arity mismatch");
  Polynomial r(a.nvars_);
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Monomial m{s.coef * t.coef, {}};
      for (int i = 0; i < a.nvars_; ++i) {
        int p = s.pow[i] + t.pow[i];
        if (p > 255) throw Error(ErrorKind::invalid_argument, "polynomial degree overflow");
        m.pow[i] = static_cast<std::uint8_t>(p);
      }
      r.terms_.push_back(m);
    }
  r.canonicalize();
  return r;
}

void Polynomial::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), pow_less);
  std::vector<Monomial> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().pow == t.pow)
      merged.back().coef += t.coef;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Monomial& m) { return std::abs(m.coef) <= kPruneTol; });
  terms_ = std::move(merged);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coef;
    for (int i = 0; i < nvars_; ++i) {
      if (t.pow[i] == 0) continue;
      os << "*x" << (i + 1);
      if (t.pow[i] > 1) os << "^" << int(t.pow[i]);
    }
  }
  return os.str();
}

}  // namespace hgcalc

namespace hgcalc {

Polynomial compose(const Polynomial& p, std::span<const Polynomial> args) {
  if (static_cast<int>(args.size()) != p.nvars())
    throw Error(ErrorKind::invalid_argument, "compose needs one argument per variable");
  const int m = args.empty() ? 0 : args[0].nvars();
  for (const auto& a : args)
    if (a.nvars() != m) throw Error(ErrorKind::invalid_argument, "compose arguments disagree on variable count");
  Polynomial out(m);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(m, t.coef);
    for (int v = 0; v < p.nvars(); ++v)
      for (int e = 0; e < t.pow[v]; ++e) term = term * args[v];
    out += term;
  }
  return out;
}

}  // namespace hgcalc
