#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "causal/process_matrix.hpp"

namespace causal {

// Operator file:
//   party <name> <d_I> <d_O>        one line per party, in order
//   <re>,<im> <re>,<im> ...          row-major entries, any line breaks
// A bare "<re>" is read as a real entry.
ProcessMatrix parse_process_matrix(std::string_view text, const std::string& source = "<operator>");
std::string format_process_matrix(const ProcessMatrix& w);

/// Square complex matrix in the same entry syntax, without party lines.
ComplexOperator parse_operator(std::string_view text, const std::string& source = "<operator>");

namespace presets {
/// "w-state" (Bell state rho), "w-channel", "w-superposed", "w-ocb",
/// "w-channel-loop".
ProcessMatrix process_matrix(std::string_view name);
std::vector<std::string> process_matrix_names();
}  // namespace presets

/// "preset:<name>" or a file path.
ProcessMatrix load_process_matrix(const std::string& reference);

}  // namespace causal
