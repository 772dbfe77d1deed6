#include <iostream>
#include <string>
#include <vector>

#include "rhsharp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rhsharp::cli::run(args, std::cout, std::cerr);
}
