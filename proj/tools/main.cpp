#include "survboost/cli.hpp"

int main(int argc, char** argv) { return survboost::run_cli(argc, argv); }
