/**
 * @file cli.hpp
 * @brief Batch front end: rep, rmatrix, verify and qchar commands.
 *
 * Artifacts go to --out or to `out` as JSON lines; summaries go to `err`.
 * Exit status: 0 success, 1 a check failed, 2 bad configuration.
 */
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "twq/algebra_type.hpp"

namespace twq {

/// usage errors map to exit status 2
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// tag and --r to a type; "A2t2" with r > 1 is the A2t2even family
AlgebraType resolve_type(const std::string& tag, int r);

/// default job count: TWQ_JOBS if set and positive, else 1
int default_jobs();

/// runs one command line without the program name; returns the exit status
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twq
