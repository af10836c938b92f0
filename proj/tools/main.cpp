#include "simdiag/cli.hpp"

int main(int argc, char** argv) { return simdiag::run_cli(argc, argv); }
