#include <string>
#include <vector>

#include "ioconf/cli.hpp"

int main(int argc, char** argv) {
  return ioconf::run_cli(std::vector<std::string>(argv, argv + argc));
}
