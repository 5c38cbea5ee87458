#include "cli.hh"

#include <iostream>

int main(int argc, char ** argv)
{
    return psdi::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
