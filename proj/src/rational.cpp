#include "agv/rational.hpp"

#include <cctype>

#include "agv/errors.hpp"

namespace agv {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational parse_unsigned(std::string_view text, std::size_t offset) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseFailure("malformed fraction", offset);
    Integer d{std::string(den)};
    if (d == 0) throw ParseFailure("zero denominator", offset + slash + 1);
    Rational r(Integer(std::string(num)), d);
    r.canonicalize();
    return r;
  }
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw ParseFailure("malformed decimal", offset);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Rational r(w * scale + Integer(std::string(frac)), scale);
    r.canonicalize();
    return r;
  }
  if (!all_digits(text)) throw ParseFailure("malformed number", offset);
  return Rational(Integer(std::string(text)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t begin = 0;
  while (begin < text.size() && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  std::size_t end = text.size();
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  text = text.substr(begin, end - begin);
  bool negative = false;
  std::size_t offset = begin;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
    ++offset;
  }
  if (text.empty()) throw ParseFailure("empty number", offset);
  Rational r = parse_unsigned(text, offset);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingParameter: return "MissingParameter";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::ActionAlphabetClash: return "ActionAlphabetClash";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::NotComposedModel: return "NotComposedModel";
    case ErrorKind::HorizonExceedsStrategyTable: return "HorizonExceedsStrategyTable";
    case ErrorKind::IllDefinedValuationInRegion: return "IllDefinedValuationInRegion";
    case ErrorKind::UnboundedReward: return "UnboundedReward";
    case ErrorKind::NotGraphPreserving: return "NotGraphPreserving";
    case ErrorKind::NonPolytopicComponent: return "NonPolytopicComponent";
    case ErrorKind::NotIntervalRPA: return "NotIntervalRPA";
    case ErrorKind::InfeasibleIntervalSet: return "InfeasibleIntervalSet";
    case ErrorKind::SideConditionError: return "SideConditionError";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace agv
