#include <covsolve/cli.hpp>
#include <iostream>

int  main(int  argc, char*  argv[])
{
    return covsolve::run_cli(argc, argv, std::cout, std::cerr);
}
