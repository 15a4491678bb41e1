#include "kthprice/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
  return kthprice::cli::run(argc, argv, std::cout, std::cerr);
}
