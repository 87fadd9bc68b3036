#ifndef CERTIBOUND_SELFCHECK_HPP
#define CERTIBOUND_SELFCHECK_HPP

#include <string>
#include <vector>

namespace certibound {

// The analytic-identity / oracle / property suite behind `certibound
// selfcheck` and the acceptance runner.  Every tolerance is pinned here.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelfCheckOptions {
  std::string subset;   // substring filter on check names; empty = all
  std::string perturb;  // name of a check to sabotage (reporting-path hook)
  int workers = 1;
  std::string surface_path;  // demo B-spline fixture for the propagation check
};

std::vector<std::string> selfcheck_names();
std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& opt);

}  // namespace certibound

#endif
