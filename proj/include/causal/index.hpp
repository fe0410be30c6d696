#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "causal/errors.hpp"

namespace causal {

/// Multiplies counts, throwing EnumerationTooLarge once the product passes `cap`.
std::uint64_t checked_product(std::span<const std::size_t> factors, std::uint64_t cap);
std::uint64_t checked_power(std::size_t base, std::size_t exponent, std::uint64_t cap);

/// Mixed-radix flattening of tuples. The leftmost digit is the most
/// significant, matching the left-to-right order of tensor factors.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<std::size_t> radices);

  std::size_t digits() const { return radices_.size(); }
  std::size_t radix(std::size_t k) const { return radices_[k]; }
  const std::vector<std::size_t>& radices() const { return radices_; }
  std::size_t size() const { return size_; }
  std::size_t stride(std::size_t k) const { return strides_[k]; }

  std::size_t encode(std::span<const std::size_t> tuple) const;
  std::vector<std::size_t> decode(std::size_t index) const;
  void decode_into(std::size_t index, std::span<std::size_t> out) const;
  std::size_t digit(std::size_t index, std::size_t k) const {
    return (index / strides_[k]) % radices_[k];
  }

  friend bool operator==(const MixedRadix& a, const MixedRadix& b) { return a.radices_ == b.radices_; }

 private:
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

/// Odometer over a mixed-radix space; `next` returns false after the last tuple.
class Odometer {
 public:
  explicit Odometer(std::vector<std::size_t> radices);

  const std::vector<std::size_t>& current() const { return digits_; }
  bool next();

 private:
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> digits_;
};

}  // namespace causal
