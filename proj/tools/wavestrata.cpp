#include "wavestrata/cli.hpp"

int main(int argc, char** argv) { return wavestrata::run(argc, argv); }
