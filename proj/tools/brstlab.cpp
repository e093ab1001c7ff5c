#include "brstlab/cli.hpp"

int main(int argc, char** argv) { return brstlab::run(std::vector<std::string>(argv, argv + argc)); }
