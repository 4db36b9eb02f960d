#include "cli_app.hpp"

int main(int argc, char** argv) { return meridian::cli::run(argc, argv); }
