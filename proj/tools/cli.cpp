#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "causal/circuit.hpp"
#include "causal/classical_process.hpp"
#include "causal/classify.hpp"
#include "causal/fixed_point.hpp"
#include "causal/games.hpp"
#include "causal/operator_io.hpp"
#include "causal/presets.hpp"
#include "causal/process_io.hpp"
#include "causal/process_matrix.hpp"
#include "causal/relations.hpp"

namespace causal::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  std::string format = "text";
  std::uint64_t cap = kDefaultEnumerationCap;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 1;
};

// Thrown for bad arguments detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json ops_json(const std::vector<DeterministicOp>& ops) {
  Json a = Json::array();
  for (const auto& op : ops) a.push_back(op.name());
  return a;
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

Json tuple(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

std::uint64_t default_cap() {
  if (const char* env = std::getenv("CAUSAL_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return kDefaultEnumerationCap;
}

std::vector<DeterministicOp> parse_ops(const std::string& text, const ProcessFunction& e) {
  std::vector<DeterministicOp> ops;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::size_t p = ops.size();
    if (p >= e.party_count()) throw UsageError("--ops lists more operations than parties");
    ops.push_back(parse_deterministic_op(item, e.input_radix().radix(p), e.output_radix().radix(p)));
  }
  if (ops.size() != e.party_count()) throw UsageError("--ops needs one operation per party");
  return ops;
}

int verdict(Json& r, bool v) {
  r["verdict"] = v;
  return v ? 0 : 1;
}

// --- process -------------------------------------------------------------

int process_validate(const Globals& g, const std::string& ref, Json& r) {
  const auto process = load_process(ref);
  const auto report = check_logical_consistency(process, g.cap);
  r["parties"] = process.party_count();
  r["nonnegative"] = report.nonnegative;
  r["total_probability"] = report.total_probability.holds;
  r["op_tuples_checked"] = report.total_probability.tuples_checked;
  if (!report.total_probability.holds) {
    r["counterexample"] = ops_json(report.total_probability.counterexample);
    r["trace"] = report.total_probability.trace.str();
  }
  return verdict(r, report.consistent());
}

int process_classify(const Globals& g, const std::string& ref, bool full, std::size_t game_inputs, Json& r) {
  const auto process = load_process(ref);
  ClassifyOptions opt;
  opt.cap = g.cap;
  opt.copy_out_search = !full;
  opt.game_input_size = game_inputs;
  const auto c = classify(process, opt);
  r["classification"] = c.verdict == CausalVerdict::Causal ? "causal" : "noncausal";
  r["strategies_checked"] = c.strategies_checked;
  if (c.witness) r["witness"] = format_strategy(*c.witness);
  if (c.witness_behaviour) r["witness_behaviour"] = format_distribution(*c.witness_behaviour);
  return verdict(r, c.verdict == CausalVerdict::Causal);
}

int process_fixpoints(const Globals& g, const std::string& ref, const std::string& ops_text, Json& r) {
  const auto process = load_process(ref);
  const auto e = as_function(process);
  if (!ops_text.empty()) {
    const auto ops = parse_ops(ops_text, e);
    const auto table = composed_table(e, ops);
    Json rows = Json::array();
    for (std::size_t t = 0; t < table.size(); ++t) {
      rows.push_back(Json::array({tuple(e.input_radix().decode(t)), tuple(e.input_radix().decode(table[t]))}));
    }
    Json points = Json::array();
    for (const auto& p : fixed_points(e, ops)) points.push_back(tuple(p));
    r["ops"] = ops_json(ops);
    r["composed"] = rows;
    r["fixed_points"] = points;
    return verdict(r, points.size() == 1);
  }
  const auto check = is_deterministic_extremal(e, g.cap);
  r["op_tuples_checked"] = check.tuples_checked;
  if (!check.extremal) {
    r["counterexample"] = ops_json(check.counterexample);
    r["fixed_point_count"] = check.fixed_point_count;
  }
  return verdict(r, check.extremal);
}

int process_decompose_check(const Globals& g, const std::string& ref, Json& r) {
  const auto d = load_decomposition(ref);
  const auto check = verify_theorem6(d, g.cap);
  const bool consistent = is_logically_consistent(d.mixture(), g.cap);
  Json weights = Json::array();
  for (const auto& [w, f] : d.components()) weights.push_back(w.str());
  r["weights"] = weights;
  r["average_one_everywhere"] = check.holds;
  r["op_tuples_checked"] = check.tuples_checked;
  if (!check.holds) {
    r["counterexample"] = ops_json(check.counterexample);
    r["average"] = check.average.str();
  }
  r["mixture_consistent"] = consistent;
  r["agree"] = consistent == check.holds;
  return verdict(r, check.holds);
}

// --- games ---------------------------------------------------------------

LocalStrategy load_strategy(const std::string& ref, const GameSpec& game) {
  if (ref.rfind("preset:", 0) == 0) return strategy_preset(ref.substr(7), game);
  return parse_strategy(read_text_file(ref), ref);
}

Json result_json(const GameResult& res) {
  Json j;
  j["success_probability"] = res.success_probability.str();
  j["success_decimal"] = num(res.success_probability.to_double());
  j["by_shared"] = rationals(res.by_shared);
  return j;
}

int game_run(const std::string& game_ref, const std::string& proc_ref, const std::string& strat_ref, Json& r) {
  const auto game = load_game(game_ref);
  const auto process = load_process(proc_ref);
  const auto strategy = load_strategy(strat_ref, game);
  r["game"] = game.name;
  r.update(result_json(play(game, process, strategy)));
  return 0;
}

void node_json(const StrategyNode& node, Json& out) {
  out["party"] = node.party;
  out["output"] = tuple(node.output);
  if (!node.next.empty()) {
    Json next = Json::array();
    for (const auto& c : node.next) {
      Json j;
      node_json(c, j);
      next.push_back(std::move(j));
    }
    out["next"] = next;
  }
}

int game_bound(const Globals& g, const std::string& game_ref, Json& r) {
  const auto game = load_game(game_ref);
  const auto bound = causal_bound(game, g.cap);
  r["game"] = game.name;
  r["bound"] = bound.result.success_probability.str();
  r["bound_decimal"] = num(bound.result.success_probability.to_double());
  r["by_shared"] = rationals(bound.result.by_shared);
  r["first_party"] = bound.strategy.first_party;
  Json roots = Json::array();
  for (const auto& root : bound.strategy.roots) {
    Json j;
    node_json(root, j);
    roots.push_back(std::move(j));
  }
  r["strategy"] = roots;
  r["nodes_visited"] = bound.nodes_visited;
  return 0;
}

// --- behaviours ----------------------------------------------------------

int relations_infer(const std::string& ref, Json& r) {
  const auto d = load_distribution(ref);
  if (!d.is_valid()) throw UsageError("distribution columns are not probability vectors");
  const auto rel = infer_relations(d);
  Json corr = Json::array();
  for (const auto& row : rel.correlated) {
    Json j = Json::array();
    for (bool b : row) j.push_back(b);
    corr.push_back(j);
  }
  Json prec = Json::array();
  for (const auto& [p, q] : rel.precedes) prec.push_back(Json::array({p, q}));
  r["correlated"] = corr;
  r["precedes"] = prec;
  r["causally_first"] = tuple(rel.causally_first);
  return verdict(r, rel.lemma1_satisfied);
}

int membership_two_party(const std::string& ref, Json& r) {
  const auto d = load_distribution(ref);
  if (!d.is_valid()) throw UsageError("distribution columns are not probability vectors");
  const auto m = two_party_causal_membership(d);
  if (m) {
    r["weight_r_first"] = m->weight_r_first.str();
    if (m->r_first) r["r_first"] = format_distribution(*m->r_first);
    if (m->s_first) r["s_first"] = format_distribution(*m->s_first);
    r["reconstructs"] = m->reconstruct() == d;
  }
  return verdict(r, m.has_value());
}

// --- quantum -------------------------------------------------------------

ComplexOperator named_unitary(const std::string& name) {
  if (name == "I") return pauli::identity();
  if (name == "X") return pauli::x();
  if (name == "Y") return pauli::y();
  if (name == "Z") return pauli::z();
  if (name == "H") return pauli::hadamard();
  return parse_operator(read_text_file(name), name);
}

ComplexOperator load_rho(const std::string& ref) {
  if (ref.empty()) return ComplexOperator::identity(2) * cplx(0.5);
  return parse_operator(read_text_file(ref), ref);
}

int quantum_validate(const Globals& g, const std::string& ref, double scale, Json& r) {
  auto w = load_process_matrix(ref);
  if (scale != 1) w = w.scaled(scale);
  const auto v = validate(w, g.epsilon);
  r["hermitian"] = v.hermitian;
  r["positive"] = v.positive;
  r["min_eigenvalue"] = num(v.min_eigenvalue);
  r["normalized"] = v.normalized;
  r["max_normalization_error"] = num(v.max_normalization_error);
  r["elements_checked"] = v.elements_checked;
  if (!v.normalized) r["failing_elements"] = tuple(v.failing_elements);
  return verdict(r, v.valid());
}

int quantum_probability(const Globals& g, const std::string& ref, const std::vector<std::size_t>& settings_in,
                        const std::string& kind, const std::string& rho_ref, Json& r) {
  const auto w = load_process_matrix(ref);
  std::vector<Instrument> inst;
  if (kind == "ocb") {
    if (w.party_count() != 2) throw UsageError("ocb instruments need a two-party process matrix");
    auto [a, b] = ocb_instruments(load_rho(rho_ref));
    inst = {a, b};
  } else if (kind == "random") {
    std::mt19937_64 rng(g.seed);
    for (const auto& p : w.parties()) inst.push_back(random_instrument(p.input_dim, p.output_dim, 2, 2, rng));
  } else {
    throw UsageError("--instruments must be 'ocb' or 'random'");
  }
  std::vector<std::size_t> settings = settings_in;
  if (settings.empty()) settings.assign(w.party_count(), 0);
  const auto p = probability(w, inst, settings);
  Json dist = Json::array();
  double sum = 0;
  for (double v : p) {
    dist.push_back(num(v));
    sum += v;
  }
  r["settings"] = tuple(settings);
  r["probabilities"] = dist;
  r["sum"] = num(sum);
  return verdict(r, std::abs(sum - 1) <= 10 * g.epsilon);
}

int quantum_ocb(const Globals& g, const std::string& rho_ref, Json& r) {
  const double value = ocb_value(load_rho(rho_ref));
  const double target = (2 + std::sqrt(2.0)) / 4;
  r["value"] = num(value);
  r["target"] = num(target);
  r["causal_bound"] = "3/4";
  return verdict(r, std::abs(value - target) <= g.epsilon);
}

int quantum_switch(const Globals& g, const std::string& b, const std::string& c, Json& r) {
  try {
    const auto res = commute_test(named_unitary(b), named_unitary(c), g.epsilon);
    r["bit"] = res.bit;
    r["relation"] = res.bit == 0 ? "commute" : "anticommute";
    r["p_commute"] = num(res.p_commute);
    r["p_anticommute"] = num(res.p_anticommute);
    return 0;
  } catch (const PromiseViolation& e) {
    r["promise_violation"] = e.what();
    return 1;
  }
}

// --- circuits ------------------------------------------------------------

bool all_digits(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

int circuit_check(const Globals& g, const std::string& ref, Json& r) {
  const auto c = load_netlist(ref);
  const auto res = is_consistent(c, g.cap);
  r["total_weights"] = rationals(res.total_weights);
  return verdict(r, res.consistent);
}

int circuit_run(const Globals& g, const std::string& ref, const std::vector<std::size_t>& inputs, Json& r) {
  const auto c = load_netlist(ref);
  const auto ev = evaluate(c, inputs, g.cap);
  r["inputs"] = tuple(inputs);
  r["total_weight"] = ev.total_weight.str();
  r["outputs"] = rationals(ev.outputs);
  Json assignments = Json::array();
  for (const auto& a : ev.assignments) assignments.push_back(Json::array({tuple(a.values), a.weight.str()}));
  r["assignments"] = assignments;
  return verdict(r, ev.total_weight.is_one());
}

int circuit_fpsearch(const Globals& g, const std::string& arg, std::size_t samples, Json& r) {
  if (!all_digits(arg)) {
    // Run the given circuit once on all-zero inputs and read its output.
    const auto c = load_netlist(arg);
    std::vector<std::uint64_t> before;
    for (const auto& gate : c.gates()) before.push_back(gate.is_oracle() ? gate.box()->queries() : 0);
    const std::vector<std::size_t> zeros(c.inputs().size(), 0);
    const auto ev = evaluate(c, zeros, g.cap);
    std::uint64_t queries = 0;
    for (std::size_t k = 0; k < c.gates().size(); ++k) {
      if (c.gates()[k].is_oracle()) queries += c.gates()[k].box()->queries() - before[k];
    }
    r["total_weight"] = ev.total_weight.str();
    r["queries"] = queries;
    if (!ev.total_weight.is_one()) {
      r["promise_violation"] = "circuit weight is not 1";
      return 1;
    }
    for (std::size_t x = 0; x < ev.outputs.size(); ++x) {
      if (ev.outputs[x].is_one()) r["value"] = x;
    }
    return verdict(r, r.contains("value"));
  }
  const std::size_t n = std::stoul(arg);
  if (n < 1) throw UsageError("n must be positive");
  std::vector<std::vector<std::size_t>> boxes;
  if (samples == 0) {
    boxes = unique_fixed_point_maps(n, g.cap);
  } else {
    std::mt19937_64 rng(g.seed);
    for (std::size_t k = 0; k < samples; ++k) boxes.push_back(random_unique_fixed_point_map(n, rng));
  }
  bool correct = true, one_query = true, baseline_ok = true;
  std::uint64_t baseline_max = 0;
  for (const auto& map : boxes) {
    std::size_t truth = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (map[i] == i) truth = i;
    }
    auto box = std::make_shared<Oracle>(map);
    const auto s = fixed_point_search(box);
    Oracle plain(map);
    const auto b = baseline_search(plain);
    correct = correct && s.value == truth;
    one_query = one_query && s.queries == 1;
    baseline_ok = baseline_ok && b.value == truth && b.queries + 1 <= n;
    baseline_max = std::max(baseline_max, b.queries);
  }
  r["n"] = n;
  r["boxes"] = boxes.size();
  r["mode"] = samples == 0 ? "exhaustive" : "sampled";
  r["all_correct"] = correct;
  r["single_query"] = one_query;
  r["baseline_max_queries"] = baseline_max;
  r["baseline_agrees"] = baseline_ok;
  return verdict(r, correct && one_query && baseline_ok);
}

std::string render(const Json& r, const std::string& format) {
  if (format == "structured") return r.dump(2) + "\n";
  std::string out;
  for (const auto& [key, value] : r.items()) {
    out += key + ": ";
    if (value.is_string()) {
      const auto& s = value.get_ref<const std::string&>();
      // Multi-line values (tables) go on their own indented block.
      if (s.find('\n') != std::string::npos) {
        out += "\n";
        std::stringstream ss(s);
        std::string line;
        while (std::getline(ss, line)) out += "  " + line + "\n";
        continue;
      }
      out += s;
    } else {
      out += value.dump();
    }
    out += "\n";
  }
  return out;
}

std::string joined(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  g.cap = default_cap();
  CLI::App app{"Exact checks and simulations for processes without a predefined causal order", "causal"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--cap", g.cap, "Upper bound on exhaustive enumerations (default from CAUSAL_CAP)");
  app.add_option("--epsilon", g.epsilon, "Tolerance for floating-point (quantum) checks");
  app.add_option("--seed", g.seed, "Seed for randomized checks");

  std::function<int(Json&)> action;
  std::string ref, ref2, ref3, ops_text, rho_ref, kind = "ocb";
  bool full = false;
  std::size_t game_inputs = 2, samples = 0;
  double scale = 1;
  std::vector<std::size_t> values;

  auto* process = app.add_subcommand("process", "Classical processes");
  process->require_subcommand(1);
  auto* pv = process->add_subcommand("validate", "Logical consistency (non-negativity and total probability)");
  pv->add_option("process", ref, "Process file or preset:<name>")->required();
  pv->callback([&] { action = [&](Json& r) { return process_validate(g, ref, r); }; });
  auto* pc = process->add_subcommand("classify", "Search for local operations that break causal order");
  pc->add_option("process", ref, "Process file or preset:<name>")->required();
  pc->add_flag("--full-search", full, "Search game outputs too, not just copies of the environment input");
  pc->add_option("--game-inputs", game_inputs, "Game-input alphabet per party");
  pc->callback([&] { action = [&](Json& r) { return process_classify(g, ref, full, game_inputs, r); }; });
  auto* pf = process->add_subcommand("fixpoints", "Fixed points of a deterministic process");
  pf->add_option("process", ref, "Process file or preset:<name>")->required();
  pf->add_option("--ops", ops_text, "Comma-separated local operations, e.g. d_id,d_id,d_not");
  pf->callback([&] { action = [&](Json& r) { return process_fixpoints(g, ref, ops_text, r); }; });
  auto* pd = process->add_subcommand("decompose-check", "Average fixed-point count of a deterministic decomposition");
  pd->add_option("decomposition", ref, "Decomposition file or preset:<name>")->required();
  pd->callback([&] { action = [&](Json& r) { return process_decompose_check(g, ref, r); }; });

  auto* game = app.add_subcommand("game", "Games");
  game->require_subcommand(1);
  auto* gr = game->add_subcommand("run", "Exact success probability of a process and strategy");
  gr->add_option("game", ref, "game1, game2, game3 or a game file")->required();
  gr->add_option("process", ref2, "Process file or preset:<name>")->required();
  gr->add_option("strategy", ref3, "Strategy file or preset:<name>")->required();
  gr->callback([&] { action = [&](Json& r) { return game_run(ref, ref2, ref3, r); }; });
  auto* gb = game->add_subcommand("bound", "Best success probability under a causal order");
  gb->add_option("game", ref, "game1, game2, game3 or a game file")->required();
  gb->callback([&] { action = [&](Json& r) { return game_bound(g, ref, r); }; });

  auto* rel = app.add_subcommand("relations", "Causal relations of a behaviour");
  rel->require_subcommand(1);
  auto* ri = rel->add_subcommand("infer", "Correlations and the causally-first condition");
  ri->add_option("distribution", ref, "Distribution file or preset:<name>")->required();
  ri->callback([&] { action = [&](Json& r) { return relations_infer(ref, r); }; });

  auto* mem = app.add_subcommand("membership", "Causal polytope membership");
  mem->require_subcommand(1);
  auto* mt = mem->add_subcommand("two-party", "Exact LP membership for two parties");
  mt->add_option("distribution", ref, "Distribution file or preset:<name>")->required();
  mt->callback([&] { action = [&](Json& r) { return membership_two_party(ref, r); }; });

  auto* q = app.add_subcommand("quantum", "Process matrices");
  q->require_subcommand(1);
  auto* qv = q->add_subcommand("validate", "Positivity and normalization of a process matrix");
  qv->add_option("matrix", ref, "Operator file or preset:<name>")->required();
  qv->add_option("--scale", scale, "Multiply the matrix by this factor first");
  qv->callback([&] { action = [&](Json& r) { return quantum_validate(g, ref, scale, r); }; });
  auto* qp = q->add_subcommand("probability", "Joint outcome distribution");
  qp->add_option("matrix", ref, "Operator file or preset:<name>")->required();
  qp->add_option("settings", values, "Instrument setting per party");
  qp->add_option("--instruments", kind, "ocb or random");
  qp->add_option("--rho", rho_ref, "Qubit state prepared by the ocb b'=1 elements (default 1/2)");
  qp->callback([&] { action = [&](Json& r) { return quantum_probability(g, ref, values, kind, rho_ref, r); }; });
  auto* qo = q->add_subcommand("ocb", "Two-party game value of the OCB process");
  qo->add_option("--rho", rho_ref, "Qubit state prepared by the b'=1 elements (default 1/2)");
  qo->callback([&] { action = [&](Json& r) { return quantum_ocb(g, rho_ref, r); }; });
  auto* qs = q->add_subcommand("switch", "Single-use commute/anticommute test");
  qs->add_option("B", ref, "I, X, Y, Z, H or an operator file")->required();
  qs->add_option("C", ref2, "I, X, Y, Z, H or an operator file")->required();
  qs->callback([&] { action = [&](Json& r) { return quantum_switch(g, ref, ref2, r); }; });

  auto* circ = app.add_subcommand("circuit", "Circuits with cycles");
  circ->require_subcommand(1);
  auto* cc = circ->add_subcommand("check", "Total weight 1 for every input");
  cc->add_option("netlist", ref, "Netlist file or preset:<name>")->required();
  cc->callback([&] { action = [&](Json& r) { return circuit_check(g, ref, r); }; });
  auto* cr = circ->add_subcommand("run", "Weights of all wire assignments");
  cr->add_option("netlist", ref, "Netlist file or preset:<name>")->required();
  cr->add_option("inputs", values, "Circuit input values");
  cr->callback([&] { action = [&](Json& r) { return circuit_run(g, ref, values, r); }; });
  auto* cf = circ->add_subcommand("fpsearch", "Single-query fixed-point search");
  cf->add_option("target", ref, "Alphabet size n (all boxes with one fixed point) or a netlist")->required();
  cf->add_option("--samples", samples, "Sample this many random boxes instead of all");
  cf->callback([&] { action = [&](Json& r) { return circuit_fpsearch(g, ref, samples, r); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!action) {
    err << "error: no command given\n";
    return 2;
  }

  Json report;
  report["command"] = joined(args);
  const auto start = std::chrono::steady_clock::now();
  int code = 2;
  try {
    code = action(report);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const EnumerationTooLarge& e) {
    err << "error: " << e.what() << " (raise --cap)\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  report["elapsed_ms"] = num(elapsed.count());
  out << render(report, g.format);
  return code;
}

}  // namespace causal::cli
