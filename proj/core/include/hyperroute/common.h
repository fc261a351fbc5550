#ifndef HYPERROUTE_COMMON_H_
#define HYPERROUTE_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace hyperroute {

// Thresholds (phi, mu, alpha, ...) are exact rationals so that boundary
// comparisons never depend on floating-point rounding.
using Rational = boost::rational<std::int64_t>;

// Parses "p/q", "p" or a finite decimal such as "0.25".
Rational ParseRational(const std::string& text);
std::string ToString(const Rational& value);

// Malformed input: bad file, out-of-range index, violated precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact (exponential-time) computation was asked to run beyond its
// configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Size limits for the exhaustive routines. Exceeding one is an error, never a
// silent approximation.
struct ExactCaps {
  int tau_b = 24;            // |B(E_S)| for the exact hitting-set search
  int haxell_a = 16;         // |A| for subset enumeration in Haxell checks
  int matching_a = 12;       // |A| for brute-force perfect matching
  int half_layer_edges = 20; // candidate edges for exhaustive half layers
  int conductance_n = 20;    // vertices for exact conductance
};

// Floor and ceiling of log2 for positive integers.
int FloorLog2(std::uint64_t x);
int CeilLog2(std::uint64_t x);

}  // namespace hyperroute

#endif  // HYPERROUTE_COMMON_H_
