#include "sodlib/cli.hpp"

int main(int argc, char** argv) { return sod::cli::run(argc, argv); }
