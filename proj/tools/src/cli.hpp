#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace classsieve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

/// Parses `args` (without the program name) and runs one subcommand.
/// Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The paper-examples report, also used by the acceptance suite.
nlohmann::ordered_json paper_examples(unsigned threads);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace classsieve::cli
