#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agv/rational.hpp"

namespace agv {

using Valuation = std::map<std::string, Rational>;

std::string to_string(const Valuation& v);

// Product of parameters with positive exponents, kept sorted by name.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(const std::string& name, unsigned exponent = 1);

  const std::vector<std::pair<std::string, unsigned>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;

  Monomial operator*(const Monomial& other) const;
  auto operator<=>(const Monomial&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, unsigned>> factors_;
};

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT: implicit lift from coefficients
  Polynomial(long constant) : Polynomial(Rational(constant)) {}
  static Polynomial variable(const std::string& name);
  static Polynomial term(const Rational& coefficient, const Monomial& monomial);

  // Canonical form `1 - 2*p + p^2`; also accepts decimals, fractions, parentheses and `^`.
  static Polynomial parse(std::string_view text);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  unsigned degree() const;
  std::set<std::string> parameters() const;

  Rational eval(const Valuation& v) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial pow(unsigned exponent) const;

  bool operator==(const Polynomial&) const = default;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

inline std::string to_string(const Polynomial& p) { return p.to_string(); }

}  // namespace agv
