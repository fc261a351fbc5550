#include "hyperroute/signature.h"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperroute {
namespace {

using boost::multiprecision::cpp_int;

// 101^k <= n * 100^k
bool PowerAtMost(std::int64_t k, const cpp_int& n) {
  cpp_int lhs = boost::multiprecision::pow(cpp_int(101), static_cast<unsigned>(k));
  cpp_int rhs = n * boost::multiprecision::pow(cpp_int(100), static_cast<unsigned>(k));
  return lhs <= rhs;
}

}  // namespace

std::int64_t FloorLog101(int five_power, std::int64_t count) {
  if (count <= 0) return 0;
  cpp_int n = boost::multiprecision::pow(cpp_int(5), static_cast<unsigned>(five_power)) *
              count;
  // Floating point only seeds the search; the answer is fixed by the exact
  // comparisons below.
  double guess = (five_power * std::log(5.0) + std::log(static_cast<double>(count))) /
                 std::log(1.01);
  std::int64_t k = std::max<std::int64_t>(0, static_cast<std::int64_t>(guess));
  while (k > 0 && !PowerAtMost(k, n)) --k;
  while (PowerAtMost(k + 1, n)) ++k;
  return k;
}

std::strong_ordering operator<=>(const Signature& lhs, const Signature& rhs) {
  std::size_t common = std::min(lhs.psi.size(), rhs.psi.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (auto c = lhs.psi[i] <=> rhs.psi[i]; c != 0) return c;
  }
  // The shorter vector continues with infinity.
  return rhs.psi.size() <=> lhs.psi.size();
}

std::uint64_t Signature::Hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [x, y] : psi) {
    mix(x);
    mix(y);
  }
  return h;
}

std::string Signature::ToString() const {
  std::ostringstream out;
  out << '(';
  for (const auto& [x, y] : psi) out << '(' << x << ',' << y << "),";
  out << "inf)";
  return out.str();
}

Signature SignatureCalculator::Compute(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& layer_sizes) {
  Signature sig;
  sig.psi.reserve(layer_sizes.size());
  for (std::size_t t = 0; t < layer_sizes.size(); ++t) {
    int two_t = static_cast<int>(2 * t);
    sig.psi.emplace_back(-Cached(two_t, layer_sizes[t].first),
                         Cached(two_t + 1, layer_sizes[t].second));
  }
  return sig;
}

std::int64_t SignatureCalculator::Cached(int five_power, std::int64_t count) {
  if (count <= 0) return 0;
  auto [it, inserted] = cache_.try_emplace({five_power, count}, 0);
  if (inserted) it->second = FloorLog101(five_power, count);
  return it->second;
}

}  // namespace hyperroute
