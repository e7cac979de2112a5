#include <iostream>
#include <string>
#include <vector>

#include "vws/cli.hpp"

int main(int argc, char** argv)
{
    return vws::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
