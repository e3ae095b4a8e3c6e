#pragma once

#include <optional>
#include <vector>

namespace flexshare {

/// Minimum-cost assignment of rows to distinct columns on a rectangular
/// cost matrix (rows <= cols required for a solution to exist). Forbidden
/// pairs are marked with +infinity. Returns one column per row, or nullopt
/// when no finite-cost complete assignment exists.
std::optional<std::vector<int>> min_cost_assignment(const std::vector<std::vector<double>>& cost);

/// Total cost of an assignment returned by min_cost_assignment.
double assignment_cost(const std::vector<std::vector<double>>& cost, const std::vector<int>& cols);

} // namespace flexshare
