#include "pooling/io.hpp"

int main(int argc, char** argv) { return pooling::cli_main(argc, argv); }
