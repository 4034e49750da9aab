#include <string>
#include <vector>

#include "freegb/driver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return freegb::run_cli(args);
}
