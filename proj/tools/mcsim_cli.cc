#include <exception>
#include <iostream>

#include "mcsim/cli.h"

int main(int argc, char** argv) {
  try {
    return mcsim::dispatch(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "mcsim-cli: " << e.what() << '\n';
    return 1;
  }
}
