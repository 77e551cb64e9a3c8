#include <vector>

#include "yinset/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return yinset::runCli(args);
}
