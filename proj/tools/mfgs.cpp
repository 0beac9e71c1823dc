// mfgs.cpp — command-line entry point
#include "mfgs/cli.hpp"

int main(int argc, char** argv) { return mfgs::cli::run(argc, argv); }
