//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>
#include <string>
#include <vector>

#include "rcmt/cli.h"

int main(int argc, char **argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return static_cast<int>(rcmt::cli::run(args, std::cout, std::cerr));
}
