#include <iostream>

#include "ohno/cli.hpp"

int main(int argc, char** argv) {
  ohno::cli::RunConfig cfg;
  if (auto stop = ohno::cli::parse(argc, argv, cfg, std::cout, std::cerr)) return *stop;
  return ohno::cli::run(cfg, std::cout, std::cerr);
}
