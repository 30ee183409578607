#include "wavecone/cli/app.hpp"

int main(int argc, char** argv) { return wavecone::cli::run(argc, argv); }
