#include "bjorling/cli.hpp"

int main(int argc, char** argv) { return bjorling::cli_main(argc, argv); }
