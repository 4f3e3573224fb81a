#include "rackq/cli.hpp"

int main(int argc, char** argv) { return rackq::cli::run_main(argc, argv); }
