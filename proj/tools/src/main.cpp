#include <iostream>
#include <string>
#include <vector>

#include "contact_focus/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return contact_focus::cli::run(args, std::cout, std::cerr);
}
