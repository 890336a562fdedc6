#include <string>
#include <vector>

#include "vhrd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vhrd::run_cli(args);
}
