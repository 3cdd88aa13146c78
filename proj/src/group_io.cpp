#include "hgcalc/group_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "hgcalc/error.hpp"

namespace hgcalc {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& what) { throw Error(ErrorKind::invalid_group, what); }

Polynomial poly_from_json(const json& j, int nvars, const std::string& where) {
  if (!j.is_array()) reject(where + ": polynomial must be an array of terms");
  Polynomial p(nvars);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coef") || !t.contains("pow")) reject(where + ": term needs coef and pow");
    const auto& pw = t.at("pow");
    if (!pw.is_array() || static_cast<int>(pw.size()) != nvars)
      reject(where + ": pow must list " + std::to_string(nvars) + " exponents");
    std::vector<int> e;
    for (const auto& k : pw) {
      if (!k.is_number_integer() || k.get<int>() < 0 || k.get<int>() > 255)
        reject(where + ": exponents must be small nonnegative integers");
      e.push_back(k.get<int>());
    }
    p += Polynomial::monomial(nvars, t.at("coef").get<double>(), e);
  }
  return p;
}

json poly_to_json(const Polynomial& p) {
  json arr = json::array();
  for (const auto& t : p.terms()) {
    json pw = json::array();
    for (int v = 0; v < p.nvars(); ++v) pw.push_back(static_cast<int>(t.pow[v]));
    arr.push_back({{"coef", t.coef}, {"pow", pw}});
  }
  return arr;
}

std::vector<Polynomial> poly_list(const json& doc, const char* key, int count, int nvars) {
  if (!doc.contains(key) || !doc.at(key).is_array()) reject(std::string("missing array '") + key + "'");
  const auto& arr = doc.at(key);
  if (static_cast<int>(arr.size()) != count) reject(std::string("'") + key + "' must have n entries");
  std::vector<Polynomial> out;
  for (int k = 0; k < count; ++k) out.push_back(poly_from_json(arr[k], nvars, std::string(key) + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace

std::vector<Polynomial> solve_inverse(const std::vector<Polynomial>& product, std::span<const double> nu) {
  const int n = static_cast<int>(product.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return nu[a] < nu[b]; });

  std::vector<Polynomial> y(n, Polynomial(n));
  std::vector<bool> solved(n, false);
  for (int k : order) {
    // product_k(x, y) - y_k must not involve y_k or unsolved coordinates.
    Polynomial rest = product[k] - Polynomial::variable(2 * n, n + k);
    for (const auto& t : rest.terms())
      for (int v = 0; v < n; ++v)
        if (t.pow[n + v] > 0 && (v == k || !solved[v]))
          reject("inverse: cannot solve the group law for y_" + std::to_string(k + 1) +
                 " (law is not triangular in the weight order)");
    std::vector<Polynomial> args;
    for (int v = 0; v < n; ++v) args.push_back(Polynomial::variable(n, v));
    for (int v = 0; v < n; ++v) args.push_back(solved[v] ? y[v] : Polynomial(n));
    y[k] = compose(rest, args) * -1.0;
    solved[k] = true;
  }
  return y;
}

GroupSpec group_from_json(const json& doc) {
  if (!doc.is_object()) reject("group description must be a JSON object");
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) reject("missing integer 'n'");
  const int n = doc.at("n").get<int>();
  if (n < 1 || n > kMaxDim) reject("n must be between 1 and " + std::to_string(kMaxDim));
  if (!doc.contains("nu") || !doc.at("nu").is_array() || static_cast<int>(doc.at("nu").size()) != n)
    reject("'nu' must list n weights");
  GroupData d;
  d.name = doc.value("name", std::string("custom"));
  for (const auto& v : doc.at("nu")) {
    if (!v.is_number()) reject("weights must be numbers");
    d.nu.push_back(v.get<double>());
  }
  for (double v : d.nu)
    if (!(v > 0.0)) reject("weights: every nu_j must be positive");
  d.product = poly_list(doc, "product", n, 2 * n);
  d.exp_inverse = poly_list(doc, "exp_inverse", n, n);
  if (!doc.contains("frame") || !doc.at("frame").is_array() || static_cast<int>(doc.at("frame").size()) != n)
    reject("'frame' must list n vector fields");
  for (int j = 0; j < n; ++j) {
    const auto& row = doc.at("frame")[j];
    if (!row.is_array() || static_cast<int>(row.size()) != n) reject("frame rows must have n coefficients");
    std::vector<Polynomial> r;
    for (int k = 0; k < n; ++k)
      r.push_back(poly_from_json(row[k], n, "frame[" + std::to_string(j) + "][" + std::to_string(k) + "]"));
    d.frame.push_back(std::move(r));
  }
  if (doc.contains("inverse"))
    d.inverse = poly_list(doc, "inverse", n, n);
  else
    d.inverse = solve_inverse(d.product, d.nu);
  return GroupSpec::custom(std::move(d));
}

json group_to_json(const GroupSpec& g) {
  const auto& d = g.data();
  json doc;
  doc["name"] = d.name;
  doc["n"] = g.dim();
  doc["nu"] = d.nu;
  auto list = [](const std::vector<Polynomial>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(poly_to_json(p));
    return a;
  };
  doc["product"] = list(d.product);
  doc["inverse"] = list(d.inverse);
  doc["exp_inverse"] = list(d.exp_inverse);
  json fr = json::array();
  for (const auto& row : d.frame) fr.push_back(list(row));
  doc["frame"] = fr;
  return doc;
}

GroupSpec load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open group file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_group, "group file '" + path + "' is not valid JSON: " + e.what());
  }
  return group_from_json(doc);
}

}  // namespace hgcalc
