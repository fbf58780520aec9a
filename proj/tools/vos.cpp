#include <cstdlib>
#include <iostream>

#include "vos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = vos::cli::run(args);
  std::cout << result.output;
  std::cerr << result.errors;
  if (std::getenv("VOS_TIMING")) std::cerr << "time_ms: " << result.timing_ms << "\n";
  return result.exit_code();
}
