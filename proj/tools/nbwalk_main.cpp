#include "nbwalk/cli.hpp"

int main(int argc, char** argv) { return nbwalk::cli::run(argc, argv); }
