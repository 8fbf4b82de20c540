#include "realityvote/cli.hpp"

int main(int argc, char** argv) { return realityvote::run_cli(argc, argv); }
