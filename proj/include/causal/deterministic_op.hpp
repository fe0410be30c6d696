#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "causal/errors.hpp"
#include "causal/matrix.hpp"

namespace causal {

/// Total map between finite alphabets {0..in-1} -> {0..out-1}, stored as its
/// truth table.
class DeterministicOp {
 public:
  DeterministicOp(std::vector<std::size_t> table, std::size_t out_size);

  static DeterministicOp identity(std::size_t n);
  static DeterministicOp constant(std::size_t in_size, std::size_t out_size, std::size_t value);

  // The four one-bit operations.
  static DeterministicOp d_id() { return identity(2); }
  static DeterministicOp d_not() { return DeterministicOp({1, 0}, 2); }
  static DeterministicOp d_0() { return constant(2, 2, 0); }
  static DeterministicOp d_1() { return constant(2, 2, 1); }

  std::size_t operator()(std::size_t input) const { return table_[input]; }
  std::size_t in_size() const { return table_.size(); }
  std::size_t out_size() const { return out_size_; }
  const std::vector<std::size_t>& table() const { return table_; }

  /// 0/1 column-stochastic matrix: rows index outputs, columns inputs.
  StochasticMatrix matrix() const;

  /// "d_id", "d_not", "d_0", "d_1" for bits, otherwise "[t0,t1,...]".
  std::string name() const;

  friend bool operator==(const DeterministicOp&, const DeterministicOp&) = default;
  friend auto operator<=>(const DeterministicOp& a, const DeterministicOp& b) {
    return a.table_ <=> b.table_;
  }

 private:
  std::vector<std::size_t> table_;
  std::size_t out_size_;
};

/// All out_size^in_size maps in lexicographic order of their truth tables
/// (for bits: d_0, d_id, d_not, d_1).
std::vector<DeterministicOp> enumerate_deterministic_ops(std::size_t in_size, std::size_t out_size,
                                                         std::uint64_t cap = kDefaultEnumerationCap);

/// Parses an op name as produced by DeterministicOp::name (for bits also
/// "id", "not", "0", "1").
DeterministicOp parse_deterministic_op(const std::string& text, std::size_t in_size, std::size_t out_size);

}  // namespace causal
