// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_TOOLS_CLI_HPP
#define KREINBEM_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kreinbem::cli
{

enum ExitCode : int
{
  kPass = 0,
  kUsage = 1,
  kNearSingular = 2,
  kToleranceFail = 3
};

/// Runs one subcommand. args excludes the program name. The JSON report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace kreinbem::cli

#endif  // KREINBEM_TOOLS_CLI_HPP
