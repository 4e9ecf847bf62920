#include "otscuts/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace otscuts {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  mpz_class z(std::string(digits), 10);
  return (!s.empty() && s.front() == '-') ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    mpz_class exp_value = parse_integer(exp_text);
    if (!exp_value.fits_slong_p() || abs(exp_value) > 10000)
      throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
    exponent = exp_value.get_si();
    body = body.substr(0, e);
  }

  std::string digits;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(body);
  }

  Rational q(mpz_class(digits, 10));
  if (exponent > 0) q *= pow10(static_cast<unsigned long>(exponent));
  if (exponent < 0) q /= pow10(static_cast<unsigned long>(-exponent));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

bool is_terminating_decimal(const Rational& value) {
  mpz_class den = value.get_den();
  for (unsigned long p : {2ul, 5ul})
    while (mpz_divisible_ui_p(den.get_mpz_t(), p)) den /= p;
  return den == 1;
}

std::string to_decimal_string(const Rational& value) {
  if (!is_terminating_decimal(value)) throw std::invalid_argument("non-terminating decimal " + to_string(value));
  mpz_class den = value.get_den();
  unsigned long scale = 0;
  // smallest k with den | 10^k
  while (!mpz_divisible_p(pow10(scale).get_mpz_t(), den.get_mpz_t())) ++scale;
  mpz_class scaled = mpz_class(value.get_num() * (pow10(scale) / den));
  bool negative = scaled < 0;
  std::string digits = mpz_class(negative ? mpz_class(-scaled) : scaled).get_str();
  if (scale > 0) {
    if (digits.size() <= scale) digits.insert(0, scale - digits.size() + 1, '0');
    digits.insert(digits.size() - scale, ".");
  }
  return negative ? "-" + digits : digits;
}

std::size_t significant_digits(const Rational& value) {
  std::string s = to_decimal_string(value);
  std::string digits;
  for (char c : s)
    if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
  auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) return 1;
  digits = digits.substr(first);
  // trailing zeros of an integer are not significant
  if (s.find('.') == std::string::npos) {
    auto last = digits.find_last_not_of('0');
    digits = digits.substr(0, last + 1);
  }
  return digits.size();
}

}  // namespace otscuts
