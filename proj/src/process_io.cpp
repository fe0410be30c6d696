#include "causal/process_io.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "causal/errors.hpp"
#include "causal/presets.hpp"
#include "text_util.hpp"

namespace causal {

using detail::Line;
using detail::split_lines;

namespace {

// Reads "d_1 .. d_n <sep> d'_1 .. d'_m : value".
struct EntryLine {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  Rational value;
};

EntryLine parse_entry(const Line& line, std::size_t n_left, std::size_t n_right, const std::string& sep,
                      const std::string& source) {
  const auto& t = line.tokens;
  if (t.size() != n_left + n_right + 3 || t[n_left] != sep || t[n_left + 1 + n_right] != ":") {
    throw ParseError(source, line.number,
                     "expected " + std::to_string(n_left) + " values, '" + sep + "', " + std::to_string(n_right) +
                         " values, ':' and a probability");
  }
  EntryLine e;
  for (std::size_t k = 0; k < n_left; ++k) e.left.push_back(detail::parse_index(t[k], line, source));
  for (std::size_t k = 0; k < n_right; ++k) e.right.push_back(detail::parse_index(t[n_left + 1 + k], line, source));
  e.value = detail::parse_rational(t.back(), line, source);
  return e;
}

void set_once(RationalMatrix& m, std::size_t r, std::size_t c, const Rational& v, std::vector<bool>& seen,
              const Line& line, const std::string& source) {
  const std::size_t k = r * m.cols() + c;
  if (seen[k]) throw ParseError(source, line.number, "duplicate entry");
  seen[k] = true;
  m.at(r, c) = v;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s;
}

}  // namespace

ClassicalProcess parse_process(std::string_view text, const std::string& source) {
  std::vector<PartySpec> parties;
  std::vector<Line> entries;
  for (const auto& line : split_lines(text, "|:")) {
    if (line.tokens.front() == "party") {
      if (!entries.empty()) throw ParseError(source, line.number, "party declarations must precede entries");
      if (line.tokens.size() != 4) throw ParseError(source, line.number, "expected: party <name> <|I|> <|O|>");
      parties.push_back({line.tokens[1], detail::parse_size(line.tokens[2], line, source),
                         detail::parse_size(line.tokens[3], line, source)});
    } else {
      entries.push_back(line);
    }
  }
  if (parties.empty()) throw ParseError(source, 1, "no party declarations");
  std::vector<std::size_t> ins, outs;
  for (const auto& p : parties) {
    ins.push_back(p.input_size);
    outs.push_back(p.output_size);
  }
  const MixedRadix in(ins), out(outs);
  RationalMatrix table(in.size(), out.size());
  std::vector<bool> seen(in.size() * out.size(), false);
  for (const auto& line : entries) {
    auto e = parse_entry(line, parties.size(), parties.size(), "|", source);
    for (std::size_t p = 0; p < parties.size(); ++p) {
      if (e.left[p] >= ins[p] || e.right[p] >= outs[p]) {
        throw ParseError(source, line.number, "value out of range for party '" + parties[p].name + "'");
      }
    }
    set_once(table, in.encode(e.left), out.encode(e.right), e.value, seen, line, source);
  }
  return ClassicalProcess(std::move(parties), std::move(table));
}

std::string format_process(const ClassicalProcess& process) {
  std::ostringstream os;
  for (const auto& p : process.parties()) os << "party " << p.name << ' ' << p.input_size << ' ' << p.output_size << '\n';
  const auto& t = process.table();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t o = 0; o < t.cols(); ++o) {
      if (t.at(i, o).is_zero()) continue;
      os << join(process.input_radix().decode(i)) << " | " << join(process.output_radix().decode(o)) << " : "
         << t.at(i, o) << '\n';
    }
  }
  return os.str();
}

ConditionalDistribution parse_distribution(std::string_view text, const std::string& source) {
  std::optional<std::vector<std::size_t>> ins, outs;
  std::vector<Line> entries;
  for (const auto& line : split_lines(text, "|:")) {
    const auto& head = line.tokens.front();
    if (head == "inputs" || head == "outputs") {
      if (!entries.empty()) throw ParseError(source, line.number, "alphabet declarations must precede entries");
      std::vector<std::size_t> sizes;
      for (std::size_t k = 1; k < line.tokens.size(); ++k) sizes.push_back(detail::parse_size(line.tokens[k], line, source));
      (head == "inputs" ? ins : outs) = std::move(sizes);
    } else {
      entries.push_back(line);
    }
  }
  if (!ins || !outs) throw ParseError(source, 1, "missing 'inputs' or 'outputs' declaration");
  if (ins->size() != outs->size() || ins->empty()) throw ParseError(source, 1, "inputs and outputs must list the same parties");
  const MixedRadix in(*ins), out(*outs);
  RationalMatrix table(out.size(), in.size());
  std::vector<bool> seen(out.size() * in.size(), false);
  for (const auto& line : entries) {
    auto e = parse_entry(line, outs->size(), ins->size(), "|", source);
    for (std::size_t p = 0; p < ins->size(); ++p) {
      if (e.left[p] >= (*outs)[p] || e.right[p] >= (*ins)[p]) throw ParseError(source, line.number, "value out of range");
    }
    set_once(table, out.encode(e.left), in.encode(e.right), e.value, seen, line, source);
  }
  return ConditionalDistribution(*ins, *outs, std::move(table));
}

std::string format_distribution(const ConditionalDistribution& d) {
  std::ostringstream os;
  os << "inputs " << join(d.input_radix().radices()) << '\n';
  os << "outputs " << join(d.output_radix().radices()) << '\n';
  const auto& t = d.table();
  for (std::size_t x = 0; x < t.rows(); ++x) {
    for (std::size_t a = 0; a < t.cols(); ++a) {
      if (t.at(x, a).is_zero()) continue;
      os << join(d.output_radix().decode(x)) << " | " << join(d.input_radix().decode(a)) << " : " << t.at(x, a) << '\n';
    }
  }
  return os.str();
}

LocalStrategy parse_strategy(std::string_view text, const std::string& source) {
  struct Block {
    PartyStrategy::Shape shape;
    std::size_t line;
    RationalMatrix table;
    std::vector<bool> seen;
  };
  std::vector<Block> blocks;
  for (const auto& line : split_lines(text, ":")) {
    const auto& t = line.tokens;
    if (t.front() == "party") {
      if (t.size() != 6) throw ParseError(source, line.number, "expected: party <name> <|A|> <|I|> <|X|> <|O|>");
      PartyStrategy::Shape s{detail::parse_size(t[2], line, source), detail::parse_size(t[3], line, source),
                             detail::parse_size(t[4], line, source), detail::parse_size(t[5], line, source)};
      const std::size_t rows = s.game_outputs * s.env_outputs, cols = s.game_inputs * s.env_inputs;
      blocks.push_back({s, line.number, RationalMatrix(rows, cols), std::vector<bool>(rows * cols, false)});
      continue;
    }
    if (blocks.empty()) throw ParseError(source, line.number, "entry before any party declaration");
    auto& b = blocks.back();
    auto e = parse_entry(line, 2, 2, "->", source);
    if (e.left[0] >= b.shape.game_inputs || e.left[1] >= b.shape.env_inputs || e.right[0] >= b.shape.game_outputs ||
        e.right[1] >= b.shape.env_outputs) {
      throw ParseError(source, line.number, "value out of range");
    }
    set_once(b.table, e.right[0] * b.shape.env_outputs + e.right[1], e.left[0] * b.shape.env_inputs + e.left[1],
             e.value, b.seen, line, source);
  }
  if (blocks.empty()) throw ParseError(source, 1, "no party blocks");
  LocalStrategy out;
  for (auto& b : blocks) {
    try {
      out.emplace_back(b.shape, std::move(b.table));
    } catch (const std::invalid_argument& err) {
      throw ParseError(source, b.line, err.what());
    }
  }
  return out;
}

std::string format_strategy(const LocalStrategy& strategy) {
  std::ostringstream os;
  for (std::size_t p = 0; p < strategy.size(); ++p) {
    const auto& s = strategy[p].shape();
    os << "party P" << p << ' ' << s.game_inputs << ' ' << s.env_inputs << ' ' << s.game_outputs << ' '
       << s.env_outputs << '\n';
    for (std::size_t a = 0; a < s.game_inputs; ++a)
      for (std::size_t i = 0; i < s.env_inputs; ++i)
        for (std::size_t x = 0; x < s.game_outputs; ++x)
          for (std::size_t o = 0; o < s.env_outputs; ++o) {
            const auto& v = strategy[p].probability(x, o, a, i);
            if (!v.is_zero()) os << a << ' ' << i << " -> " << x << ' ' << o << " : " << v << '\n';
          }
  }
  return os.str();
}

DeterministicDecomposition parse_decomposition(std::string_view text, const std::string& source,
                                               const std::string& base_dir) {
  std::vector<DeterministicDecomposition::Component> parts;
  // Raw lines are needed for inline tables, so split by hand.
  std::vector<std::string_view> raw;
  for (std::string_view rest = text; !rest.empty();) {
    const auto nl = rest.find('\n');
    raw.push_back(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
  }
  auto component = [&](const ClassicalProcess& process, std::size_t line) {
    try {
      return as_function(process);
    } catch (const std::invalid_argument& err) {
      throw ParseError(source, line, err.what());
    }
  };
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto lines = split_lines(raw[k], "");
    if (lines.empty()) continue;
    const Line line{k + 1, lines.front().tokens};
    const auto& t = line.tokens;
    if (t.front() != "weight" || t.size() < 2 || t.size() > 3) {
      throw ParseError(source, line.number, "expected: weight <p/q> [process reference]");
    }
    const Rational w = detail::parse_rational(t[1], line, source);
    if (t.size() == 3) {
      std::string ref = t[2];
      if (ref.rfind("preset:", 0) != 0 && !base_dir.empty() && std::filesystem::path(ref).is_relative()) {
        ref = (std::filesystem::path(base_dir) / ref).string();
      }
      ClassicalProcess process = [&] {
        try {
          return load_process(ref);
        } catch (const ParseError&) {
          throw;
        } catch (const std::exception& err) {
          throw ParseError(source, line.number, err.what());
        }
      }();
      parts.emplace_back(w, component(process, line.number));
      continue;
    }
    std::string body;
    std::size_t end = k + 1;
    for (; end < raw.size(); ++end) {
      const auto inner = split_lines(raw[end], "");
      if (!inner.empty() && inner.front().tokens.front() == "end") break;
      // Keep line numbers aligned with the outer file.
      body += std::string(raw[end]) + "\n";
    }
    if (end == raw.size()) throw ParseError(source, line.number, "inline table without 'end'");
    const std::string padding(k + 1, '\n');
    parts.emplace_back(w, component(parse_process(padding + body, source), line.number));
    k = end;
  }
  if (parts.empty()) throw ParseError(source, 1, "no components");
  try {
    return DeterministicDecomposition(std::move(parts));
  } catch (const std::invalid_argument& err) {
    throw ParseError(source, raw.size(), err.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ClassicalProcess load_process(const std::string& reference) {
  if (reference.rfind("preset:", 0) == 0) return presets::process(reference.substr(7));
  return parse_process(read_text_file(reference), reference);
}

ConditionalDistribution load_distribution(const std::string& reference) {
  if (reference.rfind("preset:", 0) == 0) return presets::distribution(reference.substr(7));
  return parse_distribution(read_text_file(reference), reference);
}

}  // namespace causal

namespace causal {

DeterministicDecomposition load_decomposition(const std::string& reference) {
  if (reference.rfind("preset:", 0) == 0) return presets::decomposition(reference.substr(7));
  return parse_decomposition(read_text_file(reference), reference,
                             std::filesystem::path(reference).parent_path().string());
}

}  // namespace causal
