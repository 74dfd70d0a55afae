#include "patbreak/cli.hpp"

int main(int argc, char** argv) { return patbreak::dispatch(argc, argv); }
