#include "bscoop/rational.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace bscoop {

namespace {

Rat parse_decimal(const std::string& s) {
  bool negative = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  BigInt scale = 1;
  bool seen_point = false, seen_digit = false;
  long exponent = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad rational literal: " + s);
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      exponent = std::stol(s.substr(i + 1));
      break;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (seen_point) scale *= 10;
      seen_digit = true;
    } else {
      throw std::invalid_argument("bad rational literal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad rational literal: " + s);
  Rat q(digits, scale);
  for (long e = 0; e < exponent; ++e) q *= 10;
  for (long e = 0; e > exponent; --e) q /= 10;
  return negative ? Rat(-q) : q;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rat num = parse_decimal(text.substr(0, slash));
    Rat den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return num / den;
  }
  return parse_decimal(text);
}

Rat rat_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite number");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::invalid_argument("unprintable double");
  return rat_from_string(std::string(buf, ptr));
}

std::string rat_to_fraction(const Rat& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string rat_to_fixed(const Rat& q, int places) {
  BigInt pow10 = 1;
  for (int i = 0; i < places; ++i) pow10 *= 10;
  Rat scaled = q * pow10;
  BigInt num = boost::multiprecision::numerator(scaled);
  BigInt den = boost::multiprecision::denominator(scaled);
  bool neg = num < 0;
  if (neg) num = -num;
  // round half away from zero
  BigInt quotient = (2 * num + den) / (2 * den);
  std::string body = quotient.str();
  if (places > 0) {
    if (static_cast<int>(body.size()) <= places)
      body.insert(0, places + 1 - body.size(), '0');
    body.insert(body.size() - places, ".");
  }
  return (neg && quotient != 0) ? "-" + body : body;
}

std::string rat_to_decimal(const Rat& q, int sig_digits) {
  if (q == 0) return "0";
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  // order of magnitude of |q|
  int mag = 0;
  BigInt n = num, d = den;
  while (n >= d * 10) { d *= 10; ++mag; }
  while (n < d) { n *= 10; --mag; }
  int places = sig_digits - 1 - mag;
  Rat rounded = Rat(neg ? -num : num, den);
  std::string fixed = rat_to_fixed(rounded, places > 0 ? places : 0);
  if (places > 0 && fixed.find('.') != std::string::npos) {
    // trim trailing zeros, keep at least one digit after the point
    size_t last = fixed.find_last_not_of('0');
    if (fixed[last] == '.') --last;
    fixed.erase(last + 1);
  }
  return fixed;
}

double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

}  // namespace bscoop
