#include "noisyevo/cli.hpp"

int main(int argc, char** argv) { return noisyevo::cli_main(argc, argv); }
