#include "tailmix/cli.hpp"

int main(int argc, char** argv) { return tailmix::cli_main(argc, argv); }
