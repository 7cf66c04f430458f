#include <set>

#include "doctest.h"
#include "ginibre/verify.hpp"

using namespace ginibre::verify;

TEST_CASE("identity suite passes on a clean build") {
  const auto checks = identity_suite();
  CHECK(checks.size() >= 12);
  std::set<std::string> names;
  for (const auto& c : checks) {
    INFO(c.name << " residual " << c.residual << " tol " << c.tolerance);
    CHECK(c.pass);
    names.insert(c.name);
  }
  CHECK(names.size() == checks.size());
}

TEST_CASE("perturbing I1 breaks the GinUE identity") {
  const auto checks = identity_suite({1e-6});
  bool ginue_failed = false;
  for (const auto& c : checks)
    if (c.name == "ginue_origin_variance_series_vs_closed") ginue_failed = !c.pass;
  CHECK(ginue_failed);
}
