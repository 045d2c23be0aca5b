#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "fracineq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::map<std::string, std::string> env;
  if (const char* tol = std::getenv("FRACINEQ_QUAD_TOL")) env["FRACINEQ_QUAD_TOL"] = tol;
  return fracineq::cli::run(args, env, std::cout, std::cerr);
}
