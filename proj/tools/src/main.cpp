#include <iostream>
#include <string>
#include <vector>

#include "sshqed_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sshqed::cli::run_main(args, std::cout, std::cerr);
}
