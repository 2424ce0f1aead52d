#include "hhj_cli/commands.hpp"

int main(int argc, char** argv) { return hhj::cli::main(argc, argv); }
