#include "fparadox/cli.hpp"

int main(int argc, char** argv) { return fparadox::cli::run(argc, argv); }
