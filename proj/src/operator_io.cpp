#include "causal/operator_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "causal/process_io.hpp"
#include "text_util.hpp"

namespace causal {

namespace {

double parse_double(const std::string& s, const detail::Line& line, const std::string& source) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line.number, "expected a number, got '" + s + "'");
  }
}

cplx parse_entry(const std::string& token, const detail::Line& line, const std::string& source) {
  const auto comma = token.find(',');
  if (comma == std::string::npos) return {parse_double(token, line, source), 0.0};
  return {parse_double(token.substr(0, comma), line, source), parse_double(token.substr(comma + 1), line, source)};
}

std::vector<cplx> read_entries(const std::vector<detail::Line>& lines, std::size_t first, std::size_t expected,
                               const std::string& source) {
  std::vector<cplx> entries;
  std::size_t last_line = 1;
  for (std::size_t k = first; k < lines.size(); ++k) {
    for (const auto& t : lines[k].tokens) {
      if (entries.size() == expected) throw ParseError(source, lines[k].number, "more entries than the dimension allows");
      entries.push_back(parse_entry(t, lines[k], source));
    }
    last_line = lines[k].number;
  }
  if (entries.size() != expected) {
    throw ParseError(source, last_line,
                     "expected " + std::to_string(expected) + " entries, found " + std::to_string(entries.size()));
  }
  return entries;
}

}  // namespace

ProcessMatrix parse_process_matrix(std::string_view text, const std::string& source) {
  const auto lines = detail::split_lines(text, "");
  std::vector<QuantumParty> parties;
  std::size_t k = 0;
  for (; k < lines.size() && lines[k].tokens.front() == "party"; ++k) {
    const auto& t = lines[k].tokens;
    if (t.size() != 4) throw ParseError(source, lines[k].number, "expected: party <name> <d_I> <d_O>");
    parties.push_back({t[1], detail::parse_size(t[2], lines[k], source), detail::parse_size(t[3], lines[k], source)});
  }
  if (parties.empty()) throw ParseError(source, lines.empty() ? 1 : lines.front().number, "no party declarations");
  std::size_t n = 1;
  for (const auto& p : parties) n *= p.input_dim * p.output_dim;
  auto entries = read_entries(lines, k, n * n, source);
  return ProcessMatrix(std::move(parties), ComplexOperator(n, n, std::move(entries)));
}

ComplexOperator parse_operator(std::string_view text, const std::string& source) {
  const auto lines = detail::split_lines(text, "");
  std::size_t count = 0;
  for (const auto& l : lines) count += l.tokens.size();
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
  if (n == 0 || n * n != count) throw ParseError(source, 1, "entry count " + std::to_string(count) + " is not a square");
  return ComplexOperator(n, n, read_entries(lines, 0, count, source));
}

std::string format_process_matrix(const ProcessMatrix& w) {
  std::ostringstream os;
  for (const auto& p : w.parties()) os << "party " << p.name << ' ' << p.input_dim << ' ' << p.output_dim << '\n';
  const auto& op = w.op();
  char buf[64];
  for (std::size_t r = 0; r < op.rows(); ++r) {
    for (std::size_t c = 0; c < op.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", op.at(r, c).real(), op.at(r, c).imag());
      os << (c ? " " : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

namespace presets {

ProcessMatrix process_matrix(std::string_view name) {
  if (name == "w-state") {
    const double s = 1 / std::sqrt(2.0);
    const std::vector<cplx> bell{s, 0, 0, s};
    return w_state(ComplexOperator::outer(bell));
  }
  if (name == "w-channel") return w_channel();
  if (name == "w-superposed") return w_superposed();
  if (name == "w-ocb") return w_ocb();
  if (name == "w-channel-loop") return w_channel_loop();
  throw std::invalid_argument("unknown process-matrix preset '" + std::string(name) + "'");
}

std::vector<std::string> process_matrix_names() {
  return {"w-state", "w-channel", "w-superposed", "w-ocb", "w-channel-loop"};
}

}  // namespace presets

ProcessMatrix load_process_matrix(const std::string& reference) {
  if (reference.rfind("preset:", 0) == 0) return presets::process_matrix(reference.substr(7));
  return parse_process_matrix(read_text_file(reference), reference);
}

}  // namespace causal
