#include "causal/deterministic_op.hpp"

#include <sstream>
#include <stdexcept>

#include "causal/index.hpp"

namespace causal {

DeterministicOp::DeterministicOp(std::vector<std::size_t> table, std::size_t out_size)
    : table_(std::move(table)), out_size_(out_size) {
  if (table_.empty() || out_size_ == 0) throw std::invalid_argument("deterministic op needs non-empty alphabets");
  for (std::size_t v : table_) {
    if (v >= out_size_) throw std::invalid_argument("deterministic op value out of range");
  }
}

DeterministicOp DeterministicOp::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = k;
  return DeterministicOp(std::move(t), n);
}

DeterministicOp DeterministicOp::constant(std::size_t in_size, std::size_t out_size, std::size_t value) {
  return DeterministicOp(std::vector<std::size_t>(in_size, value), out_size);
}

StochasticMatrix DeterministicOp::matrix() const {
  RationalMatrix m(out_size_, table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) m.at(table_[i], i) = 1;
  return StochasticMatrix(std::move(m));
}

std::string DeterministicOp::name() const {
  if (table_.size() == 2 && out_size_ == 2) {
    if (table_[0] == 0 && table_[1] == 1) return "d_id";
    if (table_[0] == 1 && table_[1] == 0) return "d_not";
    if (table_[0] == 0 && table_[1] == 0) return "d_0";
    return "d_1";
  }
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < table_.size(); ++k) os << (k ? "," : "") << table_[k];
  os << ']';
  return os.str();
}

std::vector<DeterministicOp> enumerate_deterministic_ops(std::size_t in_size, std::size_t out_size,
                                                         std::uint64_t cap) {
  if (in_size == 0 || out_size == 0) throw std::invalid_argument("alphabet sizes must be >= 1");
  const auto count = checked_power(out_size, in_size, cap);
  std::vector<DeterministicOp> ops;
  ops.reserve(count);
  Odometer odo(std::vector<std::size_t>(in_size, out_size));
  do {
    ops.emplace_back(odo.current(), out_size);
  } while (odo.next());
  return ops;
}

DeterministicOp parse_deterministic_op(const std::string& text, std::size_t in_size, std::size_t out_size) {
  if (in_size == 2 && out_size == 2) {
    if (text == "d_id" || text == "id") return DeterministicOp::d_id();
    if (text == "d_not" || text == "not") return DeterministicOp::d_not();
    if (text == "d_0" || text == "0") return DeterministicOp::d_0();
    if (text == "d_1" || text == "1") return DeterministicOp::d_1();
  }
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("unknown deterministic op '" + text + "'");
  }
  std::vector<std::size_t> table;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) table.push_back(std::stoul(item));
  if (table.size() != in_size) throw std::invalid_argument("op '" + text + "' has wrong input size");
  return DeterministicOp(std::move(table), out_size);
}

}  // namespace causal
