#include "klytor/cli.hpp"

int main(int argc, char** argv) { return klytor::cli::run(argc, argv); }
