#include "cubeflag/rational.hpp"

#include <cctype>

#include "cubeflag/cube.hpp"

namespace cubeflag {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// Base-10 construction; the single-argument mpz_class constructor infers the
// base, which turns leading zeros into octal.
mpz_class mpz_from_token(const std::string& s) {
  size_t i = (!s.empty() && s[0] == '+') ? 1 : 0;
  return mpz_class(s.substr(i), 10);
}

}  // namespace

Rat rat_parse(const std::string& text) {
  if (text.empty()) throw Error("empty rational");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
      throw Error("malformed rational: " + text);
    mpz_class n = mpz_from_token(num), d = mpz_from_token(den);
    if (d == 0) throw Error("zero denominator: " + text);
    Rat r(n, d);
    r.canonicalize();
    return r;
  }

  // Integer or decimal (optionally with exponent): interpret exactly.
  std::string digits;
  bool negative = false;
  long exponent10 = 0;
  size_t i = 0;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) --exponent10;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      std::string exp = text.substr(i + 1);
      if (!is_integer_token(exp)) throw Error("malformed rational: " + text);
      exponent10 += std::stol(exp);
      i = text.size() - 1;
      break;
    } else {
      throw Error("malformed rational: " + text);
    }
  }
  if (!seen_digit) throw Error("malformed rational: " + text);
  mpz_class n(digits.empty() ? mpz_class(0) : mpz_class(digits, 10));
  if (negative) n = -n;
  mpz_class num = n, den = 1;
  mpz_class ten = 10;
  if (exponent10 >= 0) {
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), exponent10);
    num *= scale;
  } else {
    mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), -exponent10);
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rat_decimal(const Rat& value, int digits) {
  if (digits < 0) throw Error("negative digit count");
  mpz_class num = value.get_num(), den = value.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  mpz_class q = num / den, r = num % den;
  std::string out = (negative && (q != 0 || r != 0) ? "-" : "") + q.get_str();
  if (digits == 0) return out;
  out.push_back('.');
  for (int i = 0; i < digits; ++i) {
    r *= 10;
    mpz_class d = r / den;
    r %= den;
    out += d.get_str();
  }
  return out;
}

}  // namespace cubeflag
