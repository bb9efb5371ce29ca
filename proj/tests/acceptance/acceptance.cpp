#include "repro/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  std::uint64_t seed = 20261018;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  bool all = true;
  for (int id = 1; id <= 7; ++id) {
    auto r = sextic::repro::run_criterion(id, seed);
    std::cout << sextic::repro::format_line(r) << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
