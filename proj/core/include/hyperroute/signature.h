#ifndef HYPERROUTE_SIGNATURE_H_
#define HYPERROUTE_SIGNATURE_H_

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hyperroute {

// floor(log_{1.01}(5^five_power * count)) with log 0 := 0, decided by exact
// big-integer comparison of 101^k against 100^k * 5^five_power * count.
std::int64_t FloorLog101(int five_power, std::int64_t count);

// Potential vector (psi_0, ..., psi_l, infinity) of an alternating forest with
// psi_t = (-floor(log_1.01(25^t |X_t|)), floor(log_1.01(5 * 25^t |Y_t|))).
// The trailing infinity is implicit: when one vector is a proper prefix of
// the other, the longer one compares smaller.
struct Signature {
  std::vector<std::pair<std::int64_t, std::int64_t>> psi;

  friend std::strong_ordering operator<=>(const Signature& lhs,
                                          const Signature& rhs);
  friend bool operator==(const Signature& lhs, const Signature& rhs) = default;

  // 64-bit FNV-1a over the entries, stable across platforms.
  std::uint64_t Hash() const;
  std::string ToString() const;
};

// Per-engine cache for FloorLog101; layer sizes repeat constantly.
class SignatureCalculator {
 public:
  // layer_sizes[t] = (|X_t|, |Y_t|).
  Signature Compute(
      const std::vector<std::pair<std::int64_t, std::int64_t>>& layer_sizes);

 private:
  std::int64_t Cached(int five_power, std::int64_t count);
  std::map<std::pair<int, std::int64_t>, std::int64_t> cache_;
};

}  // namespace hyperroute

#endif  // HYPERROUTE_SIGNATURE_H_
