#include "cli.hpp"

int main(int argc, char** argv) { return psih::run_cli(argc, argv); }
