#include "cli.hpp"

int main(int argc, char** argv) { return qedens::cli::run(argc, argv); }
