#pragma once

#include <string>
#include <string_view>

#include "causal/classical_process.hpp"
#include "causal/distribution.hpp"
#include "causal/fixed_point.hpp"
#include "causal/strategy.hpp"

namespace causal {

// Process file:
//   party <name> <|I|> <|O|>          one line per party, in order
//   <i_1> .. <i_n> | <o_1> .. <o_n> : <p/q>
// Omitted entries are 0; '#' starts a comment.
ClassicalProcess parse_process(std::string_view text, const std::string& source = "<process>");
std::string format_process(const ClassicalProcess& process);

// Distribution file:
//   inputs <|A_1|> .. <|A_n|>
//   outputs <|X_1|> .. <|X_n|>
//   <x_1> .. <x_n> | <a_1> .. <a_n> : <p/q>
ConditionalDistribution parse_distribution(std::string_view text, const std::string& source = "<distribution>");
std::string format_distribution(const ConditionalDistribution& distribution);

// Strategy file, one block per party:
//   party <name> <|A|> <|I|> <|X|> <|O|>
//   <a> <i> -> <x> <o> : <p/q>
LocalStrategy parse_strategy(std::string_view text, const std::string& source = "<strategy>");
std::string format_strategy(const LocalStrategy& strategy);

// Decomposition file, one component per "weight" line:
//   weight <p/q> <process reference>
// or an inline 0/1 process table:
//   weight <p/q>
//   party ... / entries
//   end
// Relative paths resolve against `base_dir`.
DeterministicDecomposition parse_decomposition(std::string_view text, const std::string& source = "<decomposition>",
                                               const std::string& base_dir = "");

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_text_file(const std::string& path);

/// "preset:<name>" selects a built-in; anything else is a file path.
ClassicalProcess load_process(const std::string& reference);
ConditionalDistribution load_distribution(const std::string& reference);
DeterministicDecomposition load_decomposition(const std::string& reference);

}  // namespace causal
