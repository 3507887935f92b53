#include "bkn/cli.hpp"

int main(int argc, char** argv) { return bkn::run(argc, argv); }
