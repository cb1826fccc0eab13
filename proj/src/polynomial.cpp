#include "agv/polynomial.hpp"

#include <cctype>

#include "agv/errors.hpp"

namespace agv {

std::string to_string(const Valuation& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : v) {
    if (!first) out += ", ";
    first = false;
    out += name + "=" + to_string(value);
  }
  return out + "}";
}

Monomial Monomial::variable(const std::string& name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(name, exponent);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [name, exp] : factors_) {
    if (!out.empty()) out += "*";
    out += name;
    if (exp > 1) out += "^" + std::to_string(exp);
  }
  return out;
}

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

Polynomial Polynomial::variable(const std::string& name) {
  return term(Rational(1), Monomial::variable(name));
}

Polynomial Polynomial::term(const Rational& coefficient, const Monomial& monomial) {
  Polynomial p;
  p.add_term(monomial, coefficient);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree());
  return d;
}

std::set<std::string> Polynomial::parameters() const {
  std::set<std::string> out;
  for (const auto& t : terms_)
    for (const auto& f : t.first.factors()) out.insert(f.first);
  return out;
}

Rational Polynomial::eval(const Valuation& v) const {
  Rational sum = 0;
  for (const auto& [mono, coeff] : terms_) {
    Rational prod = coeff;
    for (const auto& [name, exp] : mono.factors()) {
      auto it = v.find(name);
      if (it == v.end()) fail(ErrorKind::MissingParameter, "parameter '" + name + "' is unassigned");
      for (unsigned i = 0; i < exp; ++i) prod *= it->second;
    }
    sum += prod;
  }
  return sum;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  Polynomial out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
  *this = std::move(out);
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial out(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) out *= *this;
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    bool negative = coeff < 0;
    Rational magnitude = negative ? Rational(-coeff) : coeff;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (mono.is_one()) {
      out += agv::to_string(magnitude);
    } else if (magnitude == 1) {
      out += mono.to_string();
    } else {
      out += agv::to_string(magnitude) + "*" + mono.to_string();
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseFailure("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = product();
    for (;;) {
      if (accept('+')) {
        acc += product();
      } else if (accept('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Polynomial product() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) throw ParseFailure("division by a non-constant or zero", at);
        Rational inv = 1 / d.constant_term();
        acc *= Polynomial(inv);
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseFailure("expected exponent", pos_);
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 64) throw ParseFailure("exponent too large", start);
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseFailure("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseFailure("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return Polynomial(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return Polynomial::variable(std::string(text_.substr(start, pos_ - start)));
    }
    throw ParseFailure("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace agv
