// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char **argv)
{
  const std::vector<std::string> args(argv + 1, argv + argc);
  return kreinbem::cli::run(args, std::cout, std::cerr);
}
