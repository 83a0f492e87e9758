#include "bergvar/cli.hpp"

int main(int argc, char** argv) { return bergvar::cli_main(argc, argv); }
