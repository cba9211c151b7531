#include "cli.hpp"

int main(int argc, char** argv) { return cyclo::cli::dispatch(argc, argv); }
