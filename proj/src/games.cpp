#include "causal/games.hpp"

#include <memory>
#include <optional>
#include <stdexcept>

#include "causal/process_io.hpp"
#include "text_util.hpp"

namespace causal {

namespace {

bool is_distribution(const std::vector<Rational>& d, std::size_t n) {
  if (d.size() != n) return false;
  Rational total;
  for (const auto& p : d) {
    if (p.sign() < 0) return false;
    total += p;
  }
  return total.is_one();
}

}  // namespace

void GameSpec::validate() const {
  const std::size_t n = party_count();
  if (n == 0) throw std::invalid_argument("game '" + name + "': no parties");
  if (output_sizes.size() != n || input_distributions.size() != n) {
    throw std::invalid_argument("game '" + name + "': per-party lists have different lengths");
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (input_sizes[p] == 0 || output_sizes[p] == 0) throw std::invalid_argument("game '" + name + "': empty alphabet");
    if (!is_distribution(input_distributions[p], input_sizes[p])) {
      throw std::invalid_argument("game '" + name + "': input distribution of party " + std::to_string(p) +
                                  " is not a probability vector");
    }
  }
  if (shared_size == 0 || !is_distribution(shared_distribution, shared_size)) {
    throw std::invalid_argument("game '" + name + "': shared distribution is not a probability vector");
  }
  if (!wins) throw std::invalid_argument("game '" + name + "': no predicate");
}

std::vector<Rational> uniform(std::size_t n) { return std::vector<Rational>(n, Rational(1, static_cast<long>(n))); }

GameSpec builtin_game(std::string_view name) {
  GameSpec g;
  g.name = std::string(name);
  if (name == "game1") {
    g.input_sizes = {2, 4};
    g.output_sizes = {2, 2};
    g.wins = [](std::size_t, std::span<const std::size_t> in, std::span<const std::size_t> out) {
      const std::size_t a = in[0], b = in[1] / 2, b2 = in[1] % 2;
      return b2 == 0 ? out[0] == b : out[1] == a;
    };
  } else if (name == "game2") {
    g.input_sizes = {2, 2, 2};
    g.output_sizes = {2, 2, 2};
    g.shared_size = 3;
    g.shared_distribution = uniform(3);
    g.wins = [](std::size_t m, std::span<const std::size_t> in, std::span<const std::size_t> out) {
      // Party m guesses the parity of the other two inputs.
      return out[m] == (in[0] ^ in[1] ^ in[2] ^ in[m]);
    };
  } else if (name == "game3") {
    g.input_sizes = {2, 2, 2};
    g.output_sizes = {2, 2, 2};
    g.wins = [](std::size_t, std::span<const std::size_t> in, std::span<const std::size_t> out) {
      const std::size_t a = in[0], b = in[1], c = in[2];
      if (a + b + c < 2) return out[0] == c && out[1] == a && out[2] == b;
      return out[0] == (b ^ 1) && out[1] == (c ^ 1) && out[2] == (a ^ 1);
    };
  } else {
    throw std::invalid_argument("unknown game '" + std::string(name) + "'");
  }
  for (auto n : g.input_sizes) g.input_distributions.push_back(uniform(n));
  return g;
}

std::vector<std::string> builtin_game_names() { return {"game1", "game2", "game3"}; }

namespace {

void check_strategy_matches_game(const GameSpec& game, const LocalStrategy& strategy) {
  if (strategy.size() != game.party_count()) throw std::invalid_argument("expected one strategy per party");
  for (std::size_t p = 0; p < strategy.size(); ++p) {
    const auto& s = strategy[p].shape();
    if (s.game_inputs != game.strategy_input_size(p) || s.game_outputs != game.output_sizes[p]) {
      throw std::invalid_argument("strategy " + std::to_string(p) + " does not match the game's alphabets");
    }
  }
}

}  // namespace

GameResult score(const GameSpec& game, const ConditionalDistribution& behaviour) {
  game.validate();
  const std::size_t n = game.party_count();
  std::vector<std::size_t> strategy_inputs;
  for (std::size_t p = 0; p < n; ++p) strategy_inputs.push_back(game.strategy_input_size(p));
  if (behaviour.input_radix().radices() != strategy_inputs || behaviour.output_radix().radices() != game.output_sizes) {
    throw std::invalid_argument("behaviour does not match the game's alphabets");
  }
  const MixedRadix A(game.input_sizes), X(game.output_sizes);
  GameResult r;
  std::vector<std::size_t> a(n), x(n), s(n);
  for (std::size_t m = 0; m < game.shared_size; ++m) {
    Rational given_m;
    std::vector<Rational> per_input(A.size());
    for (std::size_t ja = 0; ja < A.size(); ++ja) {
      A.decode_into(ja, a);
      Rational pa(1);
      for (std::size_t p = 0; p < n; ++p) {
        pa *= game.input_distributions[p][a[p]];
        s[p] = m * game.input_sizes[p] + a[p];
      }
      const std::size_t col = behaviour.input_radix().encode(s);
      Rational win;
      for (std::size_t jx = 0; jx < X.size(); ++jx) {
        const auto& px = behaviour.table().at(jx, col);
        if (px.is_zero()) continue;
        X.decode_into(jx, x);
        if (game.wins(m, a, x)) win += px;
      }
      given_m += pa * win;
      per_input[ja] = std::move(win);
    }
    r.success_probability += game.shared_distribution[m] * given_m;
    r.by_shared.push_back(std::move(given_m));
    r.by_input.push_back(std::move(per_input));
  }
  return r;
}

GameResult play(const GameSpec& game, const ClassicalProcess& process, const LocalStrategy& strategy) {
  check_strategy_matches_game(game, strategy);
  return score(game, induced_distribution(process, strategy));
}

GameResult play(const GameSpec& game, const ProcessFunction& process, const LocalStrategy& strategy) {
  check_strategy_matches_game(game, strategy);
  return score(game, induced_distribution(process, strategy));
}

namespace {

class BoundSearch {
 public:
  BoundSearch(const GameSpec& game, std::uint64_t cap)
      : game_(game), cap_(cap), a_(game.party_count()), x_(game.party_count()), done_(game.party_count()) {}

  // Expected win, over the private inputs of q and everyone after it, when q
  // acts next with shared value m.
  Rational act(std::size_t m, std::size_t q, StrategyNode& node) {
    if (++nodes_ > cap_) throw EnumerationTooLarge(nodes_, cap_);
    const std::size_t na = game_.input_sizes[q];
    node.party = q;
    node.output.assign(na, 0);
    node.next.clear();
    done_[q] = true;
    Rational value;
    std::vector<std::optional<StrategyNode>> children(na);
    for (std::size_t a = 0; a < na; ++a) {
      a_[q] = a;
      std::optional<Rational> best;
      for (std::size_t x = 0; x < game_.output_sizes[q]; ++x) {
        x_[q] = x;
        std::optional<StrategyNode> child;
        Rational v = rest(m, child);
        if (!best || v > *best) {
          best = std::move(v);
          node.output[a] = x;
          children[a] = std::move(child);
        }
      }
      value += game_.input_distributions[q][a] * *best;
    }
    done_[q] = false;
    if (children.front()) {
      for (auto& c : children) node.next.push_back(std::move(*c));
    }
    return value;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  Rational rest(std::size_t m, std::optional<StrategyNode>& out) {
    std::optional<Rational> best;
    for (std::size_t q = 0; q < done_.size(); ++q) {
      if (done_[q]) continue;
      StrategyNode node;
      Rational v = act(m, q, node);
      if (!best || v > *best) {
        best = std::move(v);
        out = std::move(node);
      }
    }
    if (!best) return Rational(game_.wins(m, a_, x_) ? 1 : 0);
    return *best;
  }

  const GameSpec& game_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> a_;
  std::vector<std::size_t> x_;
  std::vector<bool> done_;
};

}  // namespace

CausalBound causal_bound(const GameSpec& game, std::uint64_t cap) {
  game.validate();
  BoundSearch search(game, cap);
  std::optional<Rational> best;
  CausalStrategy best_strategy;
  for (std::size_t f = 0; f < game.party_count(); ++f) {
    CausalStrategy s;
    s.first_party = f;
    Rational total;
    for (std::size_t m = 0; m < game.shared_size; ++m) {
      StrategyNode root;
      total += game.shared_distribution[m] * search.act(m, f, root);
      s.roots.push_back(std::move(root));
    }
    if (!best || total > *best) {
      best = std::move(total);
      best_strategy = std::move(s);
    }
  }
  CausalBound bound;
  bound.result = evaluate_causal_strategy(game, best_strategy);
  if (bound.result.success_probability != *best) {
    throw std::logic_error("causal bound: witness does not reproduce the optimum");
  }
  bound.strategy = std::move(best_strategy);
  bound.nodes_visited = search.nodes();
  return bound;
}

std::vector<std::size_t> run_causal_strategy(const CausalStrategy& strategy, std::size_t shared,
                                             std::span<const std::size_t> inputs) {
  std::vector<std::size_t> x(inputs.size(), 0);
  const StrategyNode* node = &strategy.roots.at(shared);
  while (true) {
    const std::size_t a = inputs[node->party];
    x[node->party] = node->output.at(a);
    if (node->next.empty()) break;
    node = &node->next.at(a);
  }
  return x;
}

GameResult evaluate_causal_strategy(const GameSpec& game, const CausalStrategy& strategy) {
  game.validate();
  if (strategy.roots.size() != game.shared_size) throw std::invalid_argument("causal strategy: one tree per shared value");
  const MixedRadix A(game.input_sizes);
  GameResult r;
  std::vector<std::size_t> a(game.party_count());
  for (std::size_t m = 0; m < game.shared_size; ++m) {
    Rational given_m;
    std::vector<Rational> per_input;
    for (std::size_t ja = 0; ja < A.size(); ++ja) {
      A.decode_into(ja, a);
      Rational pa(1);
      for (std::size_t p = 0; p < a.size(); ++p) pa *= game.input_distributions[p][a[p]];
      const bool win = game.wins(m, a, run_causal_strategy(strategy, m, a));
      if (win) given_m += pa;
      per_input.emplace_back(win ? 1 : 0);
    }
    r.success_probability += game.shared_distribution[m] * given_m;
    r.by_shared.push_back(std::move(given_m));
    r.by_input.push_back(std::move(per_input));
  }
  return r;
}

std::pair<ProcessFunction, LocalStrategy> realize_causal_strategy(const GameSpec& game, const CausalStrategy& strategy) {
  game.validate();
  const std::size_t n = game.party_count();
  if (strategy.roots.size() != game.shared_size) throw std::invalid_argument("causal strategy: one tree per shared value");
  // Environment output of p: its full game input g_p = m |A_p| + a_p.
  // Environment input of q: for each r != q (ascending), g_r or the mask G_r.
  std::vector<std::size_t> g_sizes, env_in_sizes;
  std::vector<MixedRadix> views;
  for (std::size_t p = 0; p < n; ++p) g_sizes.push_back(game.strategy_input_size(p));
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<std::size_t> radices;
    for (std::size_t r = 0; r < n; ++r) {
      if (r != q) radices.push_back(g_sizes[r] + 1);
    }
    views.emplace_back(radices);
    env_in_sizes.push_back(views.back().size());
  }
  auto slot = [](std::size_t q, std::size_t r) { return r < q ? r : r - 1; };

  auto e = ProcessFunction::from_map(env_in_sizes, g_sizes, [&](std::span<const std::size_t> o) {
    const std::size_t f = strategy.first_party;
    const std::size_t m = o[f] / game.input_sizes[f];
    std::vector<std::vector<std::size_t>> seen(n);
    for (std::size_t q = 0; q < n; ++q) {
      seen[q].resize(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r != q) seen[q][slot(q, r)] = g_sizes[r];
      }
    }
    std::vector<std::size_t> before;
    const StrategyNode* node = &strategy.roots.at(m);
    while (true) {
      const std::size_t q = node->party;
      for (auto r : before) seen[q][slot(q, r)] = o[r];
      before.push_back(q);
      if (node->next.empty()) break;
      node = &node->next.at(o[q] % game.input_sizes[q]);
    }
    std::vector<std::size_t> i(n);
    for (std::size_t q = 0; q < n; ++q) i[q] = views[q].encode(seen[q]);
    return i;
  });

  LocalStrategy local;
  for (std::size_t q = 0; q < n; ++q) {
    PartyStrategy::Shape shape{g_sizes[q], env_in_sizes[q], game.output_sizes[q], g_sizes[q]};
    local.push_back(PartyStrategy::deterministic(shape, [&, q](std::size_t g, std::size_t i) {
      const std::size_t m = g / game.input_sizes[q];
      const auto others = views[q].decode(i);
      const StrategyNode* node = &strategy.roots.at(m);
      while (node->party != q) {
        const std::size_t r = node->party;
        const std::size_t gr = others[slot(q, r)];
        // Masked: never happens at the fixed point.
        if (gr == g_sizes[r] || node->next.empty()) return std::pair<std::size_t, std::size_t>{0, g};
        node = &node->next.at(gr % game.input_sizes[r]);
      }
      return std::pair<std::size_t, std::size_t>{node->output.at(g % game.input_sizes[q]), g};
    }));
  }
  return {std::move(e), std::move(local)};
}

LocalStrategy strategy_preset(std::string_view name, const GameSpec& game) {
  const std::size_t n = game.party_count();
  auto need = [&](bool ok) {
    if (!ok) throw std::invalid_argument("strategy preset '" + std::string(name) + "' does not fit game '" + game.name + "'");
  };
  LocalStrategy s;
  if (name == "game2-parity") {
    need(n == 3 && game.shared_size == 3 && game.input_sizes == std::vector<std::size_t>{2, 2, 2} &&
         game.output_sizes == std::vector<std::size_t>{2, 2, 2});
    for (std::size_t p = 0; p < 3; ++p) {
      s.push_back(PartyStrategy::deterministic({6, 2, 2, 2}, [p](std::size_t g, std::size_t i) {
        const std::size_t m = g / 2, a = g % 2;
        using R = std::pair<std::size_t, std::size_t>;
        if (m == p) return R{i, 0};            // guess what arrives
        if (m == (p + 1) % 3) return R{0, i ^ a};  // the next party guesses
        return R{0, a};                        // the guesser is two steps ahead
      }));
    }
    return s;
  }
  if (name == "game3-copy" || name == "constant-zero") {
    const bool copy = name == "game3-copy";
    for (std::size_t p = 0; p < n; ++p) {
      need(game.output_sizes[p] == 2 && (!copy || game.input_sizes[p] == 2));
      const std::size_t na = game.input_sizes[p];
      s.push_back(PartyStrategy::deterministic({game.strategy_input_size(p), 2, 2, 2},
                                               [copy, na](std::size_t g, std::size_t i) {
                                                 using R = std::pair<std::size_t, std::size_t>;
                                                 return copy ? R{i, g % na} : R{0, 0};
                                               }));
    }
    return s;
  }
  throw std::invalid_argument("unknown strategy preset '" + std::string(name) + "'");
}

std::vector<std::string> strategy_preset_names() { return {"game2-parity", "game3-copy", "constant-zero"}; }

GameSpec parse_game(std::string_view text, const std::string& source) {
  using detail::Line;
  GameSpec g;
  g.name = "custom";
  std::vector<Line> wins;
  std::vector<std::pair<Line, std::vector<std::string>>> dists;
  std::optional<Line> shared_dist;
  bool shared_seen = false;
  for (const auto& line : detail::split_lines(text, ";")) {
    const auto& t = line.tokens;
    const auto& head = t.front();
    if (head == "win") {
      wins.push_back(line);
    } else if (!wins.empty()) {
      throw ParseError(source, line.number, "declarations must precede 'win' rows");
    } else if (head == "game" && t.size() == 2) {
      g.name = t[1];
    } else if ((head == "inputs" || head == "outputs") && t.size() >= 2) {
      auto& target = head == "inputs" ? g.input_sizes : g.output_sizes;
      target.clear();
      for (std::size_t k = 1; k < t.size(); ++k) target.push_back(detail::parse_size(t[k], line, source));
    } else if (head == "shared" && t.size() == 2) {
      g.shared_size = detail::parse_size(t[1], line, source);
      shared_seen = true;
    } else if (head == "distribution" && t.size() >= 3) {
      dists.emplace_back(line, std::vector<std::string>(t.begin() + 1, t.end()));
    } else if (head == "shared-distribution" && t.size() >= 2) {
      shared_dist = line;
    } else {
      throw ParseError(source, line.number, "unrecognised line starting with '" + head + "'");
    }
  }
  const std::size_t n = g.input_sizes.size();
  if (n == 0 || g.output_sizes.size() != n) throw ParseError(source, 1, "'inputs' and 'outputs' must list the same parties");
  for (auto k : g.input_sizes) g.input_distributions.push_back(uniform(k));
  g.shared_distribution = uniform(g.shared_size);
  for (const auto& [line, toks] : dists) {
    const auto p = detail::parse_index(toks[0], line, source);
    if (p >= n) throw ParseError(source, line.number, "no such party");
    std::vector<Rational> d;
    for (std::size_t k = 1; k < toks.size(); ++k) d.push_back(detail::parse_rational(toks[k], line, source));
    g.input_distributions[p] = std::move(d);
  }
  if (shared_dist) {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < shared_dist->tokens.size(); ++k) {
      d.push_back(detail::parse_rational(shared_dist->tokens[k], *shared_dist, source));
    }
    g.shared_distribution = std::move(d);
  }
  const MixedRadix A(g.input_sizes), X(g.output_sizes);
  auto table = std::make_shared<std::vector<bool>>(g.shared_size * A.size() * X.size(), false);
  for (const auto& line : wins) {
    auto t = std::vector<std::string>(line.tokens.begin() + 1, line.tokens.end());
    std::size_t m = 0;
    if (t.size() >= 2 && t[1] == ";") {
      m = detail::parse_index(t[0], line, source);
      t.erase(t.begin(), t.begin() + 2);
    } else if (shared_seen && g.shared_size > 1) {
      throw ParseError(source, line.number, "win rows need '<m> ;' when there is a shared input");
    }
    if (t.size() != 2 * n + 1 || t[n] != "->") throw ParseError(source, line.number, "expected: win [m ;] a.. -> x..");
    std::vector<std::size_t> a(n), x(n);
    for (std::size_t p = 0; p < n; ++p) {
      a[p] = detail::parse_index(t[p], line, source);
      x[p] = detail::parse_index(t[n + 1 + p], line, source);
      if (a[p] >= g.input_sizes[p] || x[p] >= g.output_sizes[p]) throw ParseError(source, line.number, "value out of range");
    }
    if (m >= g.shared_size) throw ParseError(source, line.number, "shared value out of range");
    (*table)[(m * A.size() + A.encode(a)) * X.size() + X.encode(x)] = true;
  }
  g.wins = [table, A, X](std::size_t m, std::span<const std::size_t> a, std::span<const std::size_t> x) {
    return static_cast<bool>((*table)[(m * A.size() + A.encode(a)) * X.size() + X.encode(x)]);
  };
  try {
    g.validate();
  } catch (const std::invalid_argument& err) {
    throw ParseError(source, 1, err.what());
  }
  return g;
}

GameSpec load_game(const std::string& reference) {
  std::string name = reference;
  if (name.rfind("preset:", 0) == 0) return builtin_game(name.substr(7));
  for (const auto& b : builtin_game_names()) {
    if (b == name) return builtin_game(name);
  }
  return parse_game(read_text_file(reference), reference);
}

}  // namespace causal
