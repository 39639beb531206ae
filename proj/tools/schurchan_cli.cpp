#include "schurchan/cli.hpp"

int main(int argc, char** argv) { return schurchan::run(argc, argv); }
