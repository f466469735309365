#include <iostream>
#include <string>
#include <vector>

#include "zpe_app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = zpe::app::run(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.status;
}
