#include <string>
#include <vector>

#include "covplan/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return covplan::run_command(args);
}
