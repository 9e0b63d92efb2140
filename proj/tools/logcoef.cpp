#include "logcoef/cli.hpp"

int main(int argc, char** argv) { return logcoef::dispatch(argc, argv); }
