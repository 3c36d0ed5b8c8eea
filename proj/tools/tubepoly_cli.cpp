#include "tubepoly/cli.hpp"

int main(int argc, char** argv) { return tubepoly::cli_main(argc, argv); }
