#include "ilapf/cli.hpp"

int main(int argc, char** argv) { return ilapf::cli_main(argc, argv); }
