#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "arith_lab/verify.hpp"

int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "full";
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  int failed = 0;
  arith_lab::verify::run_suite(suite, threads, [&](const arith_lab::verify::CriterionResult& r) {
    std::printf("%s\n", arith_lab::verify::format_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
