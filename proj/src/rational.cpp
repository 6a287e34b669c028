#include "epigame/rational.hpp"

namespace epigame {
namespace {

// Digit run with no leading zero (a bare "0" is fine).
bool valid_digits(std::string_view s) {
  if (s.empty()) return false;
  if (s.size() > 1 && s.front() == '0') return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!valid_digits(num)) return std::nullopt;
  BigInt n{std::string(num)};
  if (negative && n == 0) return std::nullopt;  // reject "-0"
  if (negative) n = -n;
  if (den.data() == nullptr) return Rational(n);
  if (!valid_digits(den)) return std::nullopt;
  BigInt d{std::string(den)};
  if (d == 0) return std::nullopt;
  return Rational(n, d);
}

std::string format_rational(const Rational& value) {
  std::string out = numerator(value).str();
  if (denominator(value) != 1) {
    out += '/';
    out += denominator(value).str();
  }
  return out;
}

std::string format_bigint(const BigInt& value) { return value.str(); }

}  // namespace epigame
