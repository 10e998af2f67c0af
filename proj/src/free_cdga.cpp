#include "almab/free_cdga.hpp"

#include <functional>
#include <stdexcept>

namespace almab {

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::generator(int id, const Rational& c) {
  Polynomial p;
  p.add_term({{id, 1}}, c);
  return p;
}

void Polynomial::add_term(const GenMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const GenMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& entry : terms_) entry.second *= c;
  }
  return *this;
}

int FreeCdga::add_generator(std::string name, int degree, Polynomial differential) {
  if (degree < 1) throw std::invalid_argument("generators must have positive degree");
  generators_.push_back({std::move(name), degree, std::move(differential)});
  return size() - 1;
}

int FreeCdga::degree(const GenMonomial& m) const {
  int d = 0;
  for (const auto& [id, e] : m) d += generator(id).degree * e;
  return d;
}

std::pair<int, GenMonomial> FreeCdga::multiply_monomials(const GenMonomial& a, const GenMonomial& b) const {
  GenMonomial out;
  out.reserve(a.size() + b.size());
  int sign = 1;
  // odd generators of b must pass the odd generators of a with larger id
  int odd_in_a_after = 0;
  for (const auto& [id, e] : a) {
    if (is_odd(id)) ++odd_in_a_after;
  }
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      if (is_odd(a[i].first)) --odd_in_a_after;
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      if (is_odd(b[j].first) && (odd_in_a_after & 1)) sign = -sign;
      out.push_back(b[j++]);
    } else {
      const int id = a[i].first;
      if (is_odd(id)) return {0, {}};
      out.emplace_back(id, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return {sign, out};
}

Polynomial FreeCdga::multiply(const Polynomial& a, const Polynomial& b) const {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto [sign, m] = multiply_monomials(ma, mb);
      if (sign == 0) continue;
      out.add_term(m, sign > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
    }
  }
  return out;
}

Polynomial FreeCdga::apply_derivation(const std::vector<Polynomial>& values, int derivation_degree,
                                      const Polynomial& p) const {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    // expand the monomial into its ordered factor sequence
    std::vector<int> factors;
    for (const auto& [id, e] : m) {
      for (int r = 0; r < e; ++r) factors.push_back(id);
    }
    Polynomial prefix = Polynomial::constant(c);
    int prefix_degree = 0;
    for (std::size_t pos = 0; pos < factors.size(); ++pos) {
      const int id = factors[pos];
      const Polynomial& value = values.at(static_cast<std::size_t>(id));
      if (!value.is_zero()) {
        Polynomial suffix = Polynomial::constant(1);
        for (std::size_t q = pos + 1; q < factors.size(); ++q) suffix = multiply(suffix, Polynomial::generator(factors[q]));
        Polynomial term = multiply(multiply(prefix, value), suffix);
        if ((derivation_degree * prefix_degree) % 2 != 0) term *= Rational(-1);
        out += term;
      }
      prefix = multiply(prefix, Polynomial::generator(id));
      prefix_degree += generator(id).degree;
    }
  }
  return out;
}

Polynomial FreeCdga::differential(const Polynomial& p) const {
  std::vector<Polynomial> values;
  values.reserve(generators_.size());
  for (const auto& g : generators_) values.push_back(g.differential);
  return apply_derivation(values, 1, p);
}

std::vector<GenMonomial> FreeCdga::monomials(int k, int limit) const {
  const int count = limit < 0 ? size() : std::min(limit, size());
  std::vector<GenMonomial> out;
  GenMonomial current;
  std::function<void(int, int)> recurse = [&](int id, int remaining) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    if (id >= count) return;
    const int d = generator(id).degree;
    const int max_exp = is_odd(id) ? 1 : remaining / d;
    for (int e = std::min(max_exp, remaining / d); e >= 1; --e) {
      current.emplace_back(id, e);
      recurse(id + 1, remaining - e * d);
      current.pop_back();
    }
    recurse(id + 1, remaining);
  };
  if (k == 0) return {GenMonomial{}};
  recurse(0, k);
  std::sort(out.begin(), out.end());
  return out;
}

std::string FreeCdga::format(const GenMonomial& m) const {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& [id, e] : m) {
    if (!s.empty()) s += "*";
    s += generator(id).name;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string FreeCdga::format(const Polynomial& p) const {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    if (m.empty()) {
      s += magnitude.str();
    } else {
      if (magnitude != 1) s += magnitude.str() + " ";
      s += format(m);
    }
  }
  return s;
}

PolynomialBasis::PolynomialBasis(std::vector<GenMonomial> monomials) : monomials_(std::move(monomials)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], static_cast<int>(i));
}

int PolynomialBasis::index(const GenMonomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

DenseVector<Rational> PolynomialBasis::coordinates(const Polynomial& p) const {
  DenseVector<Rational> v = DenseVector<Rational>::Constant(size(), Rational(0));
  for (const auto& [m, c] : p.terms()) {
    const int i = index(m);
    if (i < 0) throw std::out_of_range("polynomial has a monomial outside the basis");
    v(i) = c;
  }
  return v;
}

Polynomial PolynomialBasis::polynomial(const DenseVector<Rational>& v) const {
  Polynomial p;
  for (Eigen::Index i = 0; i < v.size(); ++i) p.add_term(monomials_.at(static_cast<std::size_t>(i)), v(i));
  return p;
}

}  // namespace almab
