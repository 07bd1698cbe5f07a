#include <glog/logging.h>

#include <iostream>
#include <string>
#include <vector>

#include "ccmeasure/cli.hpp"

int main(int argc, char** argv) {
  // The optimiser reports through glog; keep its warnings off the terminal.
  FLAGS_minloglevel = google::GLOG_ERROR;
  google::InitGoogleLogging(argv[0]);
  std::vector<std::string> args(argv + 1, argv + argc);
  return ccm::cli::run(args, std::cout, std::cerr);
}
