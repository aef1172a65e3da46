#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bahnlab {

// All times, prices and costs are exact rationals. Threshold rules in this
// domain sit exactly on break-even boundaries, so floating point is used only
// at the reporting boundary (see rat_to_decimal / rat_to_double). Expression
// templates are off so values behave like plain numbers in std::min and ?:.
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using BigInt =
    boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

namespace detail {

inline std::optional<BigInt> parse_big_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return std::nullopt;
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

}  // namespace detail

// Accepts "42", "-3", "0.8", "12.345", and "num/den" forms; decimal strings
// are parsed exactly (0.8 -> 4/5).
inline std::optional<Rat> try_parse_rat(std::string_view s) {
  // strip surrounding whitespace
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = detail::parse_big_int(s.substr(0, slash));
    auto den = detail::parse_big_int(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rat(*num, *den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (frac.empty()) return std::nullopt;
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = neg ? "-0" : "0";
    auto w = detail::parse_big_int(whole);
    if (!w) return std::nullopt;
    BigInt scale = 1;
    BigInt f = 0;
    for (char c : frac) {
      if (c < '0' || c > '9') return std::nullopt;
      f = f * 10 + (c - '0');
      scale *= 10;
    }
    BigInt num = boost::multiprecision::abs(*w) * scale + f;
    if (neg || *w < 0) num = -num;
    return Rat(num, scale);
  }
  auto v = detail::parse_big_int(s);
  if (!v) return std::nullopt;
  return Rat(*v);
}

inline Rat rat_from_string(std::string_view s) {
  auto r = try_parse_rat(s);
  if (!r) throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
  return *r;
}

// Canonical text form: integer when the denominator is 1, otherwise "num/den".
inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Fixed-point decimal with the given number of fractional digits, rounded
// half away from zero. Used for CSV output.
inline std::string rat_to_decimal(const Rat& r, int digits) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = numerator(r) * scale * 2;
  BigInt den = denominator(r);
  BigInt q = num / den;  // truncates toward zero
  BigInt scaled = (q >= 0 ? (q + 1) / 2 : (q - 1) / 2);
  bool neg = scaled < 0;
  BigInt a = boost::multiprecision::abs(scaled);
  std::string ds = (a / scale).str();
  std::string out = (neg ? "-" : "") + ds;
  if (digits > 0) {
    std::string fs = (a % scale).str();
    out += "." + std::string(digits - fs.size(), '0') + fs;
  }
  return out;
}

}  // namespace bahnlab
