#include <iostream>
#include <string>
#include <vector>

#include "lmoment/cli.hpp"

int main(int argc, char** argv) {
  return lmoment::cli::dispatch(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
