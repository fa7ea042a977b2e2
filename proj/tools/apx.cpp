#include "command.hpp"

int main(int argc, char** argv) { return apx::cli::main_entry(argc, argv); }
