#include "diga/cli.hpp"

int main(int argc, char** argv) { return diga::run_cli(argc, argv); }
