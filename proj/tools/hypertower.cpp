#include <iostream>

#include <hypertower/cli.hpp>

int main(int argc, char **argv)
{
    return hypertower::cli::run(argc, argv, std::cout, std::cerr);
}
