#include "matmorse/cli.hpp"

int main(int argc, char** argv) {
  return matmorse::cli::run(argc, argv, std::cout, std::cerr);
}
