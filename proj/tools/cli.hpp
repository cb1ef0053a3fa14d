#pragma once

#include "quadlie/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace quadlie::cli {

enum Exit : int { ok = 0, certification_failure = 2, input_error = 3, search_absence = 4 };

/// Pass/fail report for every structure the document carries. "pass" is the conjunction.
Json certify(const AlgebraDoc& doc);

/// Runs one command line. Bundles go to --out or to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadlie::cli
