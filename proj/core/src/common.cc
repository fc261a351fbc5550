#include "hyperroute/common.h"

#include <bit>
#include <charconv>

namespace hyperroute {
namespace {

std::int64_t ParseInt(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("not a rational number: '" + whole + "'");
  }
  return value;
}

}  // namespace

Rational ParseRational(const std::string& text) {
  std::string_view sv(text);
  if (auto slash = sv.find('/'); slash != std::string_view::npos) {
    std::int64_t num = ParseInt(sv.substr(0, slash), text);
    std::int64_t den = ParseInt(sv.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator: '" + text + "'");
    return Rational(num, den);
  }
  if (auto dot = sv.find('.'); dot != std::string_view::npos) {
    std::string_view whole = sv.substr(0, dot);
    std::string_view frac = sv.substr(dot + 1);
    if (frac.size() > 15) throw InputError("too many decimals: '" + text + "'");
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative) whole.remove_prefix(1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t int_part = whole.empty() ? 0 : ParseInt(whole, text);
    std::int64_t frac_part = frac.empty() ? 0 : ParseInt(frac, text);
    if (frac_part < 0) throw InputError("not a rational number: '" + text + "'");
    Rational value(int_part * den + frac_part, den);
    return negative ? -value : value;
  }
  return Rational(ParseInt(sv, text));
}

std::string ToString(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" +
         std::to_string(value.denominator());
}

int FloorLog2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("FloorLog2(0)");
  return 63 - std::countl_zero(x);
}

int CeilLog2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("CeilLog2(0)");
  return x == 1 ? 0 : FloorLog2(x - 1) + 1;
}

}  // namespace hyperroute
