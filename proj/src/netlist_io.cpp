#include <memory>
#include <stdexcept>

#include "causal/circuit.hpp"
#include "causal/process_io.hpp"
#include "text_util.hpp"

namespace causal {

namespace {

using detail::Line;

PortRef parse_port(const Circuit& c, const std::string& token, const Line& line, const std::string& source) {
  const auto dot = token.rfind('.');
  if (dot == std::string::npos) throw ParseError(source, line.number, "expected <gate>.<port>, got '" + token + "'");
  const auto g = c.find_gate(token.substr(0, dot));
  if (!g) throw ParseError(source, line.number, "unknown gate '" + token.substr(0, dot) + "'");
  return {*g, detail::parse_index(token.substr(dot + 1), line, source)};
}

}  // namespace

Circuit parse_netlist(std::string_view text, const std::string& source) {
  const auto lines = detail::split_lines(text, "|:");
  Circuit c;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto& t = line.tokens;
    auto arity = [&](std::size_t n) {
      if (t.size() != n) throw ParseError(source, line.number, "wrong number of fields for '" + t.front() + "'");
    };
    try {
      if (t.front() == "gate") {
        if (t.size() < 3) throw ParseError(source, line.number, "expected: gate <name> <kind> ...");
        const auto& name = t[1];
        const auto& kind = t[2];
        if (kind == "identity") {
          arity(4);
          c.add_gate(Gate::identity(name, detail::parse_size(t[3], line, source)));
        } else if (kind == "not") {
          if (t.size() == 3) {
            c.add_gate(Gate::not_gate(name));
          } else {
            arity(4);
            c.add_gate(Gate::not_gate(name, detail::parse_size(t[3], line, source)));
          }
        } else if (kind == "cnot") {
          arity(4);
          c.add_gate(Gate::cnot(name, detail::parse_size(t[3], line, source)));
        } else if (kind == "constant") {
          arity(5);
          c.add_gate(Gate::constant(name, detail::parse_size(t[3], line, source), detail::parse_index(t[4], line, source)));
        } else if (kind == "oracle") {
          std::vector<std::size_t> map;
          for (std::size_t j = 3; j < t.size(); ++j) map.push_back(detail::parse_index(t[j], line, source));
          c.add_gate(Gate::oracle(name, std::make_shared<Oracle>(std::move(map))));
        } else if (kind == "matrix") {
          std::vector<std::size_t> ins, outs;
          bool arrow = false;
          for (std::size_t j = 3; j < t.size(); ++j) {
            if (t[j] == "->") {
              arrow = true;
            } else {
              (arrow ? outs : ins).push_back(detail::parse_size(t[j], line, source));
            }
          }
          if (!arrow || ins.empty() || outs.empty()) {
            throw ParseError(source, line.number, "expected: gate <name> matrix <in sizes> -> <out sizes>");
          }
          const MixedRadix in(ins), out(outs);
          RationalMatrix m(out.size(), in.size());
          std::size_t j = k + 1;
          for (; j < lines.size() && lines[j].tokens.front() != "end"; ++j) {
            const auto& e = lines[j];
            const auto& et = e.tokens;
            const std::size_t no = outs.size(), ni = ins.size();
            if (et.size() != no + ni + 3 || et[no] != "|" || et[no + 1 + ni] != ":") {
              throw ParseError(source, e.number, "expected: <outputs> | <inputs> : <p/q>");
            }
            std::vector<std::size_t> o(no), i(ni);
            for (std::size_t q = 0; q < no; ++q) o[q] = detail::parse_index(et[q], e, source);
            for (std::size_t q = 0; q < ni; ++q) i[q] = detail::parse_index(et[no + 1 + q], e, source);
            for (std::size_t q = 0; q < no; ++q) {
              if (o[q] >= outs[q]) throw ParseError(source, e.number, "value out of range");
            }
            for (std::size_t q = 0; q < ni; ++q) {
              if (i[q] >= ins[q]) throw ParseError(source, e.number, "value out of range");
            }
            m.at(out.encode(o), in.encode(i)) = detail::parse_rational(et.back(), e, source);
          }
          if (j == lines.size()) throw ParseError(source, line.number, "matrix gate without 'end'");
          c.add_gate(Gate(name, ins, outs, StochasticMatrix(std::move(m))));
          k = j;
        } else {
          throw ParseError(source, line.number, "unknown gate kind '" + kind + "'");
        }
      } else if (t.front() == "wire") {
        if (t.size() != 4 || t[2] != "->") throw ParseError(source, line.number, "expected: wire <gate>.<out> -> <gate>.<in>");
        c.connect(parse_port(c, t[1], line, source), parse_port(c, t[3], line, source));
      } else if (t.front() == "input") {
        arity(2);
        c.add_input(parse_port(c, t[1], line, source));
      } else if (t.front() == "output") {
        arity(2);
        c.add_output(parse_port(c, t[1], line, source));
      } else {
        throw ParseError(source, line.number, "unrecognised line starting with '" + t.front() + "'");
      }
    } catch (const std::invalid_argument& err) {
      throw ParseError(source, line.number, err.what());
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& err) {
    throw ParseError(source, lines.empty() ? 1 : lines.back().number, err.what());
  }
  return c;
}

namespace presets {

Circuit circuit(std::string_view name) {
  Circuit c;
  if (name == "not-loop" || name == "identity-loop") {
    const auto g = c.add_gate(name == "not-loop" ? Gate::not_gate("N") : Gate::identity("I", 2));
    c.connect({g, 0}, {g, 0});
    return c;
  }
  if (name == "cnot") {
    const auto g = c.add_gate(Gate::cnot("C", 2));
    c.add_input({g, 0});
    c.add_input({g, 1});
    c.add_output({g, 0});
    c.add_output({g, 1});
    return c;
  }
  const std::string_view prefix = "fixed-point-";
  if (name.substr(0, prefix.size()) == prefix) {
    std::vector<std::size_t> map;
    std::string rest(name.substr(prefix.size()));
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto dash = rest.find('-', pos);
      const auto part = rest.substr(pos, dash == std::string::npos ? std::string::npos : dash - pos);
      try {
        map.push_back(std::stoul(part));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad box table in circuit preset '" + std::string(name) + "'");
      }
      if (dash == std::string::npos) break;
      pos = dash + 1;
    }
    return fixed_point_circuit(std::make_shared<Oracle>(std::move(map)));
  }
  throw std::invalid_argument("unknown circuit preset '" + std::string(name) + "'");
}

std::vector<std::string> circuit_names() { return {"not-loop", "identity-loop", "cnot", "fixed-point-<t0>-<t1>-..."}; }

}  // namespace presets

Circuit load_netlist(const std::string& reference) {
  if (reference.rfind("preset:", 0) == 0) return presets::circuit(reference.substr(7));
  return parse_netlist(read_text_file(reference), reference);
}

}  // namespace causal
