#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace curviq {

/// One verification record: an identifier, the hbar order it concerns
/// (-1 when the check is not order-resolved), the measured residual and
/// the tolerance it was held to.
struct CheckRecord {
  std::string id;
  int hbar_order = -1;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Deterministic collection of check records; passes iff every record does.
struct Report {
  std::vector<CheckRecord> checks;

  void add(std::string id, int hbar_order, double residual, double tol) {
    checks.push_back({std::move(id), hbar_order, residual, tol,
                      residual <= tol});
  }
  void add_bool(std::string id, bool ok, double tol) {
    checks.push_back({std::move(id), -1, ok ? 0.0 : 1.0, tol, ok});
  }

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.pass; });
  }
};

}  // namespace curviq
