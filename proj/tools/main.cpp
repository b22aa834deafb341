#include "husr/cli.hpp"

int main(int argc, char** argv) { return husr::run_cli(argc, argv); }
