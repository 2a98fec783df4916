#include <iostream>

#include "dirichlet_cli/cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = dirichlet::cli::parse_args(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return dirichlet::cli::run(*parsed.config, std::cout, std::cerr);
}
