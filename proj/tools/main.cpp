#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto result = fewno::cli::run(args);
  for (const auto& d : result.diagnostics) std::cerr << "fewno: " << d << '\n';
  std::cout << fewno::cli::output_document(result).dump(2) << '\n';
  return result.exit_code;
}
