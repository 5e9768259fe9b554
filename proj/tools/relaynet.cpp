#include "relaynet/cli.hpp"

int main(int argc, char** argv) { return relaynet::cli::main_entry(argc, argv); }
