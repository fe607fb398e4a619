#include "voxsim/cli/commands.hpp"

int main(int argc, char** argv) { return voxsim::cli::run_cli(argc, argv); }
