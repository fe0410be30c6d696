#include "causal/index.hpp"

#include <stdexcept>

namespace causal {

std::uint64_t checked_product(std::span<const std::size_t> factors, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t f : factors) {
    if (f == 0) return 0;
    if (total > cap / f) throw EnumerationTooLarge(cap == UINT64_MAX ? cap : cap + 1, cap);
    total *= f;
  }
  if (total > cap) throw EnumerationTooLarge(total, cap);
  return total;
}

std::uint64_t checked_power(std::size_t base, std::size_t exponent, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < exponent; ++k) {
    if (base == 0) return 0;
    if (total > cap / base) throw EnumerationTooLarge(cap == UINT64_MAX ? cap : cap + 1, cap);
    total *= base;
  }
  if (total > cap) throw EnumerationTooLarge(total, cap);
  return total;
}

MixedRadix::MixedRadix(std::vector<std::size_t> radices)
    : radices_(std::move(radices)), strides_(radices_.size()) {
  for (std::size_t k = radices_.size(); k-- > 0;) {
    if (radices_[k] == 0) throw std::invalid_argument("mixed radix with zero-sized digit");
    strides_[k] = size_;
    size_ *= radices_[k];
  }
}

std::size_t MixedRadix::encode(std::span<const std::size_t> tuple) const {
  if (tuple.size() != radices_.size()) throw std::invalid_argument("tuple length does not match radix");
  std::size_t index = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k] >= radices_[k]) throw std::out_of_range("tuple digit out of range");
    index += tuple[k] * strides_[k];
  }
  return index;
}

std::vector<std::size_t> MixedRadix::decode(std::size_t index) const {
  std::vector<std::size_t> out(radices_.size());
  decode_into(index, out);
  return out;
}

void MixedRadix::decode_into(std::size_t index, std::span<std::size_t> out) const {
  for (std::size_t k = 0; k < radices_.size(); ++k) out[k] = (index / strides_[k]) % radices_[k];
}

Odometer::Odometer(std::vector<std::size_t> radices)
    : radices_(std::move(radices)), digits_(radices_.size(), 0) {}

bool Odometer::next() {
  for (std::size_t k = radices_.size(); k-- > 0;) {
    if (++digits_[k] < radices_[k]) return true;
    digits_[k] = 0;
  }
  return false;
}

}  // namespace causal
