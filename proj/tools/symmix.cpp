#include "symmix/cli.hpp"

int main(int argc, char** argv) { return symmix::run_cli(argc, argv); }
