#include "emit.hpp"

int main(int argc, char** argv) { return tetlab::cli::run_main(argc, argv); }
