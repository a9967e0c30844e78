#include "mirrorcert/cli.hpp"

int main(int argc, char** argv) { return mirrorcert::run_cli(argc, argv); }
