#include "app.hpp"

int main(int argc, char** argv) { return quasilin::cli::main_entry(argc, argv); }
