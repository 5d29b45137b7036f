#include "transmin/cli/app.hpp"

int main(int argc, char** argv) { return transmin::cli::run(argc, argv); }
