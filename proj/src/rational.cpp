#include "tauberian/rational.hpp"

#include <cctype>

#include "tauberian/errors.hpp"

namespace tlab {

Rat make_rat(long num, long den) {
  require(den != 0, Errc::invalid_argument, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int parse_int(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(Errc::parse_error, "malformed rational '" + std::string(whole) + "'");
  Int v(std::string(s), 10);
  return neg ? Int(-v) : v;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(Errc::parse_error, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(text.substr(0, slash), text);
    Int den = parse_int(text.substr(slash + 1), text);
    if (den == 0) fail(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    Int ev = parse_int(text.substr(e + 1), text);
    if (!ev.fits_slong_p()) fail(Errc::parse_error, "exponent out of range");
    exponent = ev.get_si();
  }
  bool neg = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    neg = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    auto ip = mantissa.substr(0, dot);
    auto fp = mantissa.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      fail(Errc::parse_error, "malformed number '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) fail(Errc::parse_error, "malformed number '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Int num(digits, 10);
  if (neg) num = -num;
  long scale = exponent - frac_digits;
  Int ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rat r = scale >= 0 ? Rat(num * ten_pow) : Rat(num, ten_pow);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rat& value) { return value.get_d(); }

Rat pow(const Rat& base, unsigned exponent) {
  Rat r(1);
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

Int from_int128(__int128 value) {
  bool neg = value < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(value + 1)) + 1 : static_cast<unsigned __int128>(value);
  Int hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  Int lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  Int r = (hi << 64) + lo;
  return neg ? Int(-r) : r;
}

Rat rat_from_int128(__int128 num, __int128 den) {
  require(den != 0, Errc::invalid_argument, "zero denominator");
  Rat r(from_int128(num), from_int128(den));
  r.canonicalize();
  return r;
}

SmallFraction small_fraction(const Rat& value) {
  if (!value.get_num().fits_slong_p() || !value.get_den().fits_slong_p())
    fail(Errc::invalid_argument, "rational " + to_string(value) + " does not fit 64-bit arithmetic");
  return {value.get_num().get_si(), value.get_den().get_si()};
}

}  // namespace tlab
