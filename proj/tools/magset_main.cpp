#include "magset/cli.hpp"

int main(int argc, char** argv) { return magset::cli::run(argc, argv); }
