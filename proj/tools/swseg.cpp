#include <string>
#include <vector>

#include "swseg/cli.hpp"

int main(int argc, char** argv) {
  return swseg::cli::main_entry(std::vector<std::string>(argv + 1, argv + argc));
}
