#include "honeytext/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "honeytext/errors.hpp"

namespace honeytext {

namespace {

constexpr double kWeightTolerance = 1e-9;
constexpr double kReducedCostTolerance = 1e-10;

void validate_bag(const WeightedBag& bag, const char* name) {
  if (bag.items.size() != bag.weights.size()) {
    throw InputError(std::string(name) + ": items and weights differ in size");
  }
  if (bag.items.empty()) {
    throw InputError(std::string(name) + ": bag is empty");
  }
  double total = 0.0;
  for (double w : bag.weights) {
    if (w < -kWeightTolerance) {
      throw InputError(std::string(name) + ": negative weight");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw InputError(std::string(name) + ": weights sum to " +
                     std::to_string(total) + ", expected 1");
  }
}

bool is_uniform(const WeightedBag& bag) {
  double expected = 1.0 / static_cast<double>(bag.items.size());
  for (double w : bag.weights) {
    if (std::abs(w - expected) > kWeightTolerance) return false;
  }
  return true;
}

// O(n^3) assignment via alternating potentials. Returns, for each column,
// the matched row.
std::vector<std::size_t> solve_assignment(
    const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = match[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double current = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (current < minv[j]) {
          minv[j] = current;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
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
      std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_of_column(n);
  for (std::size_t j = 1; j <= n; ++j) row_of_column[j - 1] = match[j] - 1;
  return row_of_column;
}

struct BasicCell {
  std::size_t i, j;
  double flow;
};

// Transportation simplex with Bland's entering/leaving rule (no cycling).
TransportPlan solve_transportation(const std::vector<double>& supply,
                                   const std::vector<double>& demand,
                                   const std::vector<std::vector<double>>& cost) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();

  // Northwest-corner start: advance one index per step so the basis has
  // exactly m + n - 1 cells, zero-flow cells included.
  std::vector<BasicCell> basis;
  basis.reserve(m + n - 1);
  {
    std::vector<double> a = supply, b = demand;
    std::size_t i = 0, j = 0;
    for (;;) {
      double f = std::min(a[i], b[j]);
      basis.push_back({i, j, f});
      a[i] -= f;
      b[j] -= f;
      if (i + 1 == m && j + 1 == n) break;
      if (a[i] <= b[j]) {
        if (i + 1 < m) ++i;
        else ++j;
      } else {
        if (j + 1 < n) ++j;
        else ++i;
      }
    }
  }

  std::vector<std::vector<long long>> basis_index(
      m, std::vector<long long>(n, -1));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    basis_index[basis[k].i][basis[k].j] = static_cast<long long>(k);
  }

  const std::size_t max_iterations = 2000 * (m + n) * (m + n);
  for (std::size_t iteration = 0;; ++iteration) {
    if (iteration >= max_iterations) {
      throw Error("transportation solver failed to converge");
    }

    // Potentials from the basis tree: u_i + v_j = c_ij on basic cells.
    const double unset = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> u(m, unset), v(n, unset);
    u[0] = 0.0;
    bool progress = true;
    std::size_t solved = 1;
    while (solved < m + n && progress) {
      progress = false;
      for (const auto& cell : basis) {
        bool u_known = !std::isnan(u[cell.i]);
        bool v_known = !std::isnan(v[cell.j]);
        if (u_known == v_known) continue;
        if (u_known) {
          v[cell.j] = cost[cell.i][cell.j] - u[cell.i];
        } else {
          u[cell.i] = cost[cell.i][cell.j] - v[cell.j];
        }
        ++solved;
        progress = true;
      }
    }
    if (solved < m + n) throw Error("transportation basis is not spanning");

    // Bland: first cell (row-major) with negative reduced cost enters.
    std::size_t enter_i = m, enter_j = n;
    for (std::size_t i = 0; i < m && enter_i == m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (basis_index[i][j] >= 0) continue;
        if (cost[i][j] - u[i] - v[j] < -kReducedCostTolerance) {
          enter_i = i;
          enter_j = j;
          break;
        }
      }
    }
    if (enter_i == m) break;  // optimal

    // Unique cycle: path from row node enter_i to column node enter_j
    // through basis edges, plus the entering cell.
    // Nodes: rows are [0, m), columns are [m, m + n).
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(
        m + n);  // node -> (neighbor node, basis cell index)
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::size_t row_node = basis[k].i;
      std::size_t col_node = m + basis[k].j;
      adjacency[row_node].push_back({col_node, k});
      adjacency[col_node].push_back({row_node, k});
    }
    std::vector<long long> parent_node(m + n, -1), parent_edge(m + n, -1);
    std::vector<bool> seen(m + n, false);
    std::vector<std::size_t> queue{enter_i};
    seen[enter_i] = true;
    while (!queue.empty()) {
      std::size_t node = queue.back();
      queue.pop_back();
      if (node == m + enter_j) break;
      for (const auto& [next, edge] : adjacency[node]) {
        if (seen[next]) continue;
        seen[next] = true;
        parent_node[next] = static_cast<long long>(node);
        parent_edge[next] = static_cast<long long>(edge);
        queue.push_back(next);
      }
    }
    std::vector<std::size_t> path_cells;  // from column end back to row end
    for (std::size_t node = m + enter_j; node != enter_i;) {
      path_cells.push_back(static_cast<std::size_t>(parent_edge[node]));
      node = static_cast<std::size_t>(parent_node[node]);
    }

    // Walking from the entering cell along the path alternates signs,
    // starting with a minus.
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave_cell = basis.size();
    std::size_t leave_id = m * n;  // row-major tie-break keeps Bland's order
    for (std::size_t step = 0; step < path_cells.size(); ++step) {
      if (step % 2 != 0) continue;  // plus position
      const BasicCell& cell = basis[path_cells[step]];
      std::size_t cell_id = cell.i * n + cell.j;
      if (cell.flow < theta || (cell.flow == theta && cell_id < leave_id)) {
        theta = cell.flow;
        leave_cell = path_cells[step];
        leave_id = cell_id;
      }
    }
    if (leave_cell == basis.size()) {
      throw Error("transportation pivot found no leaving cell");
    }

    for (std::size_t step = 0; step < path_cells.size(); ++step) {
      basis[path_cells[step]].flow += (step % 2 == 0) ? -theta : theta;
    }
    basis_index[basis[leave_cell].i][basis[leave_cell].j] = -1;
    basis[leave_cell] = {enter_i, enter_j, theta};
    basis_index[enter_i][enter_j] = static_cast<long long>(leave_cell);
  }

  TransportPlan plan;
  plan.flow.assign(m, std::vector<double>(n, 0.0));
  for (const auto& cell : basis) {
    double f = std::max(cell.flow, 0.0);
    plan.flow[cell.i][cell.j] = f;
    plan.cost += f * cost[cell.i][cell.j];
  }
  return plan;
}

}  // namespace

WeightedBag WeightedBag::uniform(std::vector<std::string> items) {
  if (items.empty()) throw InputError("uniform bag needs at least one item");
  WeightedBag bag;
  bag.weights.assign(items.size(), 1.0 / static_cast<double>(items.size()));
  bag.items = std::move(items);
  return bag;
}

TransportPlan emd(const WeightedBag& x, const WeightedBag& y,
                  const Metric& metric) {
  validate_bag(x, "x");
  validate_bag(y, "y");

  const std::size_t m = x.items.size();
  const std::size_t n = y.items.size();
  std::vector<std::vector<double>> cost(m, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = metric(x.items[i], y.items[j]);
    }
  }

  if (m == n && is_uniform(x) && is_uniform(y)) {
    auto row_of_column = solve_assignment(cost);
    TransportPlan plan;
    plan.flow.assign(m, std::vector<double>(n, 0.0));
    const double share = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      plan.flow[row_of_column[j]][j] = share;
      plan.cost += share * cost[row_of_column[j]][j];
    }
    return plan;
  }
  return solve_transportation(x.weights, y.weights, cost);
}

double flatten_distance(const std::vector<std::string>& m,
                        const std::vector<std::string>& m_prime,
                        const Metric& metric) {
  if (m.size() != m_prime.size()) {
    throw InputError("messages differ in length");
  }
  if (m.empty()) return 0.0;
  if (m.size() > 10) {
    throw ResourceError("permutation enumeration limited to 10 items");
  }
  const std::size_t n = m.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = metric(m[i], m_prime[j]);
    }
  }
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i][sigma[i]];
    best = std::min(best, total);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best / static_cast<double>(n);
}

}  // namespace honeytext
