#include "causal/relations.hpp"

#include <stdexcept>

#include "causal/lp.hpp"

namespace causal {

CausalRelationReport infer_relations(const ConditionalDistribution& behaviour) {
  const std::size_t n = behaviour.party_count();
  const auto& in = behaviour.input_radix();
  CausalRelationReport report;
  report.correlated.assign(n, std::vector<bool>(n, false));

  std::vector<std::size_t> a(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      // Compare q's output marginal across values of a_p with every other
      // input held fixed; enumerate only columns where a_p = 0 as anchors.
      bool found = false;
      for (std::size_t col = 0; col < in.size() && !found; ++col) {
        if (in.digit(col, p) != 0) continue;
        const auto anchor = behaviour.output_marginal(q, col);
        for (std::size_t v = 1; v < in.radix(p) && !found; ++v) {
          if (behaviour.output_marginal(q, col + v * in.stride(p)) != anchor) found = true;
        }
      }
      report.correlated[p][q] = found;
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p != q && report.correlated[p][q] && !report.correlated[q][p]) report.precedes.emplace_back(p, q);
    }
  }

  for (std::size_t q = 0; q < n; ++q) {
    bool independent = true;
    for (std::size_t p = 0; p < n; ++p) {
      if (p != q && report.correlated[p][q]) independent = false;
    }
    if (independent) report.causally_first.push_back(q);
  }
  report.lemma1_satisfied = !report.causally_first.empty();
  return report;
}

ConditionalDistribution TwoPartyDecomposition::reconstruct() const {
  const ConditionalDistribution& shape = r_first ? *r_first : *s_first;
  RationalMatrix table(shape.table().rows(), shape.table().cols());
  if (r_first) {
    RationalMatrix part = r_first->table();
    part *= weight_r_first;
    table += part;
  }
  if (s_first) {
    RationalMatrix part = s_first->table();
    part *= Rational(1) - weight_r_first;
    table += part;
  }
  return ConditionalDistribution(shape.input_radix().radices(), shape.output_radix().radices(), std::move(table));
}

std::optional<TwoPartyDecomposition> two_party_causal_membership(const ConditionalDistribution& behaviour) {
  if (behaviour.party_count() != 2) throw std::invalid_argument("two-party membership needs exactly two parties");
  if (!behaviour.is_valid()) throw std::invalid_argument("behaviour is not a conditional distribution");
  const auto& in = behaviour.input_radix();
  const auto& out = behaviour.output_radix();
  const std::size_t na = in.radix(0), nb = in.radix(1), nx = out.radix(0), ny = out.radix(1);
  const std::size_t cells = out.size() * in.size();

  // Variables: r1(x,y,a,b) then r2(x,y,a,b), both >= 0.
  auto r1 = [&](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    return (x * ny + y) * in.size() + a * nb + b;
  };
  auto r2 = [&](std::size_t x, std::size_t y, std::size_t a, std::size_t b) { return cells + r1(x, y, a, b); };

  LinearSystem lp(2 * cells);
  for (std::size_t v = 0; v < 2 * cells; ++v) lp.require_nonnegative(v);
  auto row = [&] { return std::vector<Rational>(2 * cells); };

  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) {
          auto c = row();
          c[r1(x, y, a, b)] = 1;
          c[r2(x, y, a, b)] = 1;
          lp.add(std::move(c), Relation::Equal, behaviour.table().at(x * ny + y, a * nb + b));
        }

  // R before S: sum_y r1(x,y,a,b) does not depend on b.
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 1; b < nb; ++b) {
        auto c = row();
        for (std::size_t y = 0; y < ny; ++y) {
          c[r1(x, y, a, b)] += 1;
          c[r1(x, y, a, 0)] -= 1;
        }
        lp.add(std::move(c), Relation::Equal, 0);
      }
  // S before R: sum_x r2(x,y,a,b) does not depend on a.
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t a = 1; a < na; ++a) {
        auto c = row();
        for (std::size_t x = 0; x < nx; ++x) {
          c[r2(x, y, a, b)] += 1;
          c[r2(x, y, 0, b)] -= 1;
        }
        lp.add(std::move(c), Relation::Equal, 0);
      }
  // The weight of r1 is the same for every input pair.
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      if (a == 0 && b == 0) continue;
      auto c = row();
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
          c[r1(x, y, a, b)] += 1;
          c[r1(x, y, 0, 0)] -= 1;
        }
      lp.add(std::move(c), Relation::Equal, 0);
    }

  const auto solution = lp_feasible(lp);
  if (!solution) return std::nullopt;

  const auto& s = *solution;
  TwoPartyDecomposition d;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) d.weight_r_first += s[r1(x, y, 0, 0)];

  auto component = [&](bool first, const Rational& weight) {
    RationalMatrix t(out.size(), in.size());
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t a = 0; a < na; ++a)
          for (std::size_t b = 0; b < nb; ++b) {
            const auto v = first ? r1(x, y, a, b) : r2(x, y, a, b);
            t.at(x * ny + y, a * nb + b) = s[v] / weight;
          }
    return ConditionalDistribution(in.radices(), out.radices(), std::move(t));
  };
  const Rational rest = Rational(1) - d.weight_r_first;
  if (!d.weight_r_first.is_zero()) d.r_first = component(true, d.weight_r_first);
  if (!rest.is_zero()) d.s_first = component(false, rest);
  return d;
}

}  // namespace causal
