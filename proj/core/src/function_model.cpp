#include "ohz/function_model.hpp"

#include <cmath>
#include <sstream>

namespace ohz {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

FunctionModel FunctionModel::identity() {
  FunctionModel f = polynomial({0.0, 1.0});
  f.id_ = "identity";
  return f;
}

FunctionModel FunctionModel::constant(cplx c) {
  FunctionModel f;
  f.kind_ = Kind::Poly;
  f.coeffs_ = {c};
  f.exact_divdiff_ = true;
  f.bounded_ = true;
  f.band_limit_ = 0.0;
  f.id_ = "const";
  return f;
}

FunctionModel FunctionModel::power(int k) {
  if (k < 0) throw DomainError("power: negative exponent on the line");
  std::vector<double> c(static_cast<size_t>(k) + 1, 0.0);
  c.back() = 1.0;
  FunctionModel f = polynomial(std::move(c));
  f.id_ = "power:" + std::to_string(k);
  return f;
}

FunctionModel FunctionModel::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  FunctionModel f;
  f.kind_ = Kind::Poly;
  f.coeffs_.assign(coeffs.begin(), coeffs.end());
  f.exact_divdiff_ = true;
  f.bounded_ = coeffs.size() == 1;
  f.id_ = "poly";
  return f;
}

FunctionModel FunctionModel::abs_power(double alpha) {
  if (alpha <= 0) throw DomainError("abs_power: alpha must be positive");
  FunctionModel f;
  f.kind_ = Kind::AbsPower;
  f.alpha_ = alpha;
  f.bounded_ = false;
  std::ostringstream os;
  os << "abs_power:" << alpha;
  f.id_ = os.str();
  return f;
}

FunctionModel FunctionModel::exponential() {
  FunctionModel f;
  f.kind_ = Kind::Exp;
  f.id_ = "exp";
  return f;
}

FunctionModel FunctionModel::sine() {
  FunctionModel f;
  f.kind_ = Kind::Sin;
  f.bounded_ = true;
  f.band_limit_ = 1.0;
  f.id_ = "sin";
  return f;
}

FunctionModel FunctionModel::cosine() {
  FunctionModel f;
  f.kind_ = Kind::Cos;
  f.bounded_ = true;
  f.band_limit_ = 1.0;
  f.id_ = "cos";
  return f;
}

FunctionModel FunctionModel::lacunary(int terms) {
  if (terms < 1) throw DomainError("lacunary: need at least one term");
  FunctionModel f;
  f.kind_ = Kind::Lacunary;
  f.terms_ = terms;
  f.bounded_ = true;
  f.band_limit_ = std::pow(2.0, terms);
  f.id_ = "lacunary:" + std::to_string(terms);
  return f;
}

FunctionModel FunctionModel::laurent(std::vector<cplx> coeffs, int k_min) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  FunctionModel f;
  f.kind_ = Kind::Laurent;
  f.domain_ = FnDomain::Circle;
  f.coeffs_ = std::move(coeffs);
  f.k_min_ = k_min;
  f.exact_divdiff_ = true;
  f.bounded_ = true;
  int deg = std::max(std::abs(k_min), std::abs(k_min + static_cast<int>(f.coeffs_.size()) - 1));
  f.band_limit_ = static_cast<double>(deg);
  f.id_ = "laurent";
  return f;
}

FunctionModel FunctionModel::analytic_poly(std::vector<cplx> coeffs) {
  FunctionModel f = laurent(std::move(coeffs), 0);
  f.id_ = "zpoly";
  return f;
}

FunctionModel FunctionModel::custom(std::function<cplx(cplx, int)> eval_deriv, std::string id,
                                    bool bounded, FnDomain domain) {
  FunctionModel f;
  f.kind_ = Kind::Custom;
  f.custom_ = std::move(eval_deriv);
  f.bounded_ = bounded;
  f.domain_ = domain;
  f.id_ = std::move(id);
  return f;
}

FunctionModel FunctionModel::custom_fd(std::function<cplx(cplx)> value, std::string id,
                                       bool bounded, FnDomain domain) {
  auto eval = [value](cplx x, int order) -> cplx {
    if (order == 0) return value(x);
    // central differences, recursively; adequate for low orders only
    const double h = 1e-5;
    std::function<cplx(cplx, int)> d = [&](cplx z, int r) -> cplx {
      if (r == 0) return value(z);
      return (d(z + h / 2, r - 1) - d(z - h / 2, r - 1)) / h;
    };
    return d(x, order);
  };
  FunctionModel f = custom(eval, std::move(id), bounded, domain);
  f.fd_derivatives_ = true;
  return f;
}

cplx FunctionModel::value(cplx x) const { return derivative(x, 0); }

cplx FunctionModel::derivative(cplx x, int order) const {
  if (order < 0) throw DomainError("derivative: negative order");
  switch (kind_) {
    case Kind::Poly:
    case Kind::Laurent: {
      // d^r/dx^r sum c_k x^k = sum c_k k(k-1)...(k-r+1) x^{k-r}
      cplx acc = 0.0;
      for (size_t i = 0; i < coeffs_.size(); ++i) {
        int k = k_min_ + static_cast<int>(i);
        double fac = 1.0;
        for (int r = 0; r < order; ++r) fac *= static_cast<double>(k - r);
        if (fac == 0.0) continue;
        int p = k - order;
        cplx xp;
        if (p >= 0) {
          xp = std::pow(x, p);
        } else {
          if (x == cplx(0.0)) throw DomainError("laurent: pole at 0");
          xp = std::pow(x, p);
        }
        acc += coeffs_[i] * fac * xp;
      }
      return acc;
    }
    case Kind::AbsPower: {
      double t = x.real();
      if (order == 0) return std::pow(std::abs(t), alpha_);
      if (t == 0.0) throw DomainError("abs_power: derivative undefined at 0");
      double fac = 1.0;
      for (int r = 0; r < order; ++r) fac *= (alpha_ - r);
      double sgn = (t < 0.0) ? ((order % 2) ? -1.0 : 1.0) : 1.0;
      return sgn * fac * std::pow(std::abs(t), alpha_ - order);
    }
    case Kind::Exp:
      return std::exp(x);
    case Kind::Sin: {
      switch (order % 4) {
        case 0: return std::sin(x);
        case 1: return std::cos(x);
        case 2: return -std::sin(x);
        default: return -std::cos(x);
      }
    }
    case Kind::Cos: {
      switch (order % 4) {
        case 0: return std::cos(x);
        case 1: return -std::sin(x);
        case 2: return -std::cos(x);
        default: return std::sin(x);
      }
    }
    case Kind::Custom:
      return custom_(x, order);
    case Kind::Lacunary: {
      cplx acc = 0.0;
      for (int n = 1; n <= terms_; ++n) {
        double w = std::pow(2.0, n);
        double amp = std::pow(2.0, n * (order - 1.0));
        cplx arg = w * x;
        cplx term;
        switch (order % 4) {
          case 0: term = std::cos(arg); break;
          case 1: term = -std::sin(arg); break;
          case 2: term = -std::cos(arg); break;
          default: term = std::sin(arg); break;
        }
        acc += amp * term;
      }
      return acc;
    }
  }
  throw DomainError("derivative: unknown kind");
}

FunctionModel FunctionModel::from_id(const std::string& id) {
  auto parts = split(id, ':');
  const std::string& head = parts[0];
  auto arg = [&](size_t i) -> std::string {
    if (i >= parts.size()) throw DomainError("function id '" + id + "': missing argument");
    return parts[i];
  };
  if (head == "identity") return identity();
  if (head == "const") return constant(std::stod(arg(1)));
  if (head == "power") return power(std::stoi(arg(1)));
  if (head == "abs_power") return abs_power(std::stod(arg(1)));
  if (head == "abs") return abs_power(1.0);
  if (head == "exp") return exponential();
  if (head == "sin") return sine();
  if (head == "cos") return cosine();
  if (head == "lacunary") return lacunary(std::stoi(arg(1)));
  if (head == "poly") {
    std::vector<double> c;
    for (const auto& tok : split(arg(1), ',')) c.push_back(std::stod(tok));
    FunctionModel f = polynomial(std::move(c));
    f.id_ = id;
    return f;
  }
  if (head == "zpoly") {
    std::vector<cplx> c;
    for (const auto& tok : split(arg(1), ',')) c.emplace_back(std::stod(tok));
    FunctionModel f = analytic_poly(std::move(c));
    f.id_ = id;
    return f;
  }
  if (head == "zlaurent") {
    int kmin = std::stoi(arg(1));
    std::vector<cplx> c;
    for (const auto& tok : split(arg(2), ',')) c.emplace_back(std::stod(tok));
    FunctionModel f = laurent(std::move(c), kmin);
    f.id_ = id;
    return f;
  }
  throw DomainError("unknown function id '" + id + "'");
}

}  // namespace ohz
