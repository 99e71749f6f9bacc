#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "matula/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> config;
  if (const char* path = std::getenv(matula::cli::kConfigEnv); path && *path) config = path;
  return matula::cli::run(args, std::cin, std::cout, std::cerr, config);
}
