#include "experiments.hpp"

int main(int argc, char** argv) { return pinball::cli::run_cli(argc, argv); }
