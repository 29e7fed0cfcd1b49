#include "picturecalc_cli.hpp"

int main(int argc, char** argv) {
  return picturecalc::cli::run(argc, argv);
}
