#include "flexshare/hungarian.hpp"

#include <limits>
#include <stdexcept>

namespace flexshare {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Classic O(n^3) shortest-augmenting-path scheme over the square matrix
// obtained by padding missing rows with zeros. 1-based potentials.
std::vector<int> solve_square(const std::vector<std::vector<double>>& cost, int n) {
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (!(delta < kInf)) return {}; // no augmenting path with finite cost
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
    }
    return row_to_col;
}

} // namespace

std::optional<std::vector<int>> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    const int rows = static_cast<int>(cost.size());
    if (rows == 0) return std::vector<int>{};
    const int cols = static_cast<int>(cost[0].size());
    for (const auto& row : cost) {
        if (static_cast<int>(row.size()) != cols) {
            throw std::invalid_argument("min_cost_assignment: ragged cost matrix");
        }
    }
    if (rows > cols) return std::nullopt;

    // Replace infinities with a big-M so the square solver stays finite,
    // then reject any real row that ends up on a forbidden column.
    double max_finite = 0.0;
    for (const auto& row : cost) {
        for (double c : row) {
            if (c < kInf && c > max_finite) max_finite = c;
        }
    }
    const double big = (max_finite + 1.0) * (cols + 1);

    const int n = cols;
    std::vector<std::vector<double>> square(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            square[i][j] = cost[i][j] < kInf ? cost[i][j] : big;
        }
    }
    // padding rows stay all-zero

    const auto assigned = solve_square(square, n);
    if (assigned.empty() && n > 0) return std::nullopt;
    std::vector<int> out(rows, -1);
    for (int i = 0; i < rows; ++i) {
        const int j = assigned[i];
        if (j < 0 || !(cost[i][j] < kInf)) return std::nullopt;
        out[i] = j;
    }
    return out;
}

double assignment_cost(const std::vector<std::vector<double>>& cost, const std::vector<int>& cols) {
    double total = 0.0;
    for (std::size_t i = 0; i < cols.size(); ++i) total += cost[i][cols[i]];
    return total;
}

} // namespace flexshare
