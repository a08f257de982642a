#include <iostream>
#include <string>
#include <vector>

#include "starimage/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return starimage::cli::run(std::move(args), std::cout, std::cerr);
}
