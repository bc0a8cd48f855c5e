#include <iostream>
#include <string>
#include <vector>

#include "ptau/clirun.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  ptau::CliOutcome out = ptau::run_cli(args);
  std::cout << out.report;
  return out.exit_code;
}
