#include "ramana/cli.hpp"

int main(int argc, char** argv) { return ramana::CliMain(argc, argv); }
