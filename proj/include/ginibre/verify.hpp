#pragma once

#include <string>
#include <vector>

namespace ginibre::verify {

struct Check {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};

struct Options {
  // fault injection: I1 -> I1 * (1 + delta) inside the GinUE closed form
  double perturb_i1 = 0;
};

std::vector<Check> identity_suite(const Options& opt = {});

}  // namespace ginibre::verify
