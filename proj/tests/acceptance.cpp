// Runs every acceptance criterion at its pinned tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.

#include <iostream>

#include "qnd/verify.hpp"

int main() {
  const auto results = qnd::cli::run_acceptance({});
  qnd::cli::print_report(results, std::cout);
  return qnd::cli::all_passed(results) ? 0 : 1;
}
