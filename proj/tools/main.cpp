#include "eiregret/bench/cli.hpp"

int main(int argc, char** argv) { return eiregret::bench::run_cli(argc, argv); }
