#include "ditop/cli.hpp"

int main(int argc, char** argv) { return ditop::run_cli(argc, argv); }
