#include <iostream>
#include <string>
#include <vector>

#include "vinerep/report/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return vinerep::cli::run_command(args, std::cout, std::cerr);
}
