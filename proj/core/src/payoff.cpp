#include "stopgame/payoff.hpp"

#include <cmath>
#include <stdexcept>

namespace stopgame {

PayoffField::PayoffField(const FilteredTree& tree,
                         std::array<std::vector<std::vector<double>>, 2> slices)
    : horizon_(tree.horizon()), slices_(std::move(slices)), bound_(0.0) {
    const int n = horizon_ + 1;
    for (int i = 0; i < 2; ++i) {
        if (static_cast<int>(slices_[i].size()) != n * n)
            throw std::invalid_argument(
                "payoffs: player " + std::to_string(i + 1) + " needs " +
                std::to_string(n * n) + " slices");
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const auto& s = slices_[i][j * n + k];
                const int want = tree.level_size(std::max(j, k));
                if (static_cast<int>(s.size()) != want)
                    throw std::invalid_argument(
                        "payoffs: slice (" + std::to_string(j) + ", " +
                        std::to_string(k) + ") of player " + std::to_string(i + 1) +
                        " must hold one value per node of level " +
                        std::to_string(std::max(j, k)));
                for (double v : s) {
                    if (!std::isfinite(v))
                        throw std::invalid_argument("payoffs: non-finite value");
                    bound_ = std::max(bound_, std::fabs(v));
                }
            }
    }
}

double PayoffField::value_for_scenario(const FilteredTree& tree, Player p, int j,
                                       int k, int scenario) const {
    const int level = std::max(j, k);
    const int node = tree.scenario_node(scenario, level);
    return value_at_node(p, j, k, tree.level_index(node));
}

bool PayoffField::is_zero_sum(double tol) const {
    for (std::size_t e = 0; e < slices_[0].size(); ++e)
        for (std::size_t v = 0; v < slices_[0][e].size(); ++v)
            if (std::fabs(slices_[0][e][v] + slices_[1][e][v]) > tol) return false;
    return true;
}

double Modulus::at_time(double d) const {
    if (d <= 0.0) return table.empty() ? 0.0 : table[0];
    // Round up to the next grid distance; exact multiples stay put.
    const int m = static_cast<int>(std::ceil(d / step - 1e-9));
    return at_levels(m);
}

Modulus empirical_modulus(const FilteredTree& tree, const PayoffField& payoffs) {
    const int n = tree.horizon() + 1;
    Modulus out;
    out.step = tree.grid().step;
    out.table.assign(2 * tree.horizon() + 1, 0.0);

    std::vector<double> grid(n * n);
    for (int s = 0; s < tree.scenario_count(); ++s) {
        for (int i = 0; i < 2; ++i) {
            const Player p = i == 0 ? Player::one : Player::two;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    grid[j * n + k] = payoffs.value_for_scenario(tree, p, j, k, s);
            for (int a = 0; a < n * n; ++a) {
                const int j = a / n, k = a % n;
                for (int b = a + 1; b < n * n; ++b) {
                    const int j2 = b / n, k2 = b % n;
                    const int dist = std::abs(j - j2) + std::abs(k - k2);
                    const double diff = std::fabs(grid[a] - grid[b]);
                    if (diff > out.table[dist]) out.table[dist] = diff;
                }
            }
        }
    }
    for (std::size_t m = 1; m < out.table.size(); ++m)
        out.table[m] = std::max(out.table[m], out.table[m - 1]);
    return out;
}

double evaluate_game(const FilteredTree& tree, const PayoffField& payoffs,
                     Player p, const StoppingStrategy& rho,
                     const StoppingStrategy& tau) {
    const std::vector<int> rho_settled = compose(tree, rho, tau);
    const std::vector<int> tau_settled = compose(tree, tau, rho);
    double sum = 0.0;
    for (int s = 0; s < tree.scenario_count(); ++s)
        sum += tree.scenario_prob(s) *
               payoffs.value_for_scenario(tree, p, rho_settled[s], tau_settled[s], s);
    return sum;
}

BoundaryValues evaluate_subgame(const FilteredTree& tree,
                                const PayoffField& payoffs, Player p,
                                const StoppingStrategy& rho,
                                const StoppingStrategy& tau,
                                const StoppingTime& sigma) {
    const std::vector<int> start = realized_times(tree, sigma);
    const std::vector<int> rho_first = realized_times(tree, rho.first);
    const std::vector<int> tau_first = realized_times(tree, tau.first);
    for (int s = 0; s < tree.scenario_count(); ++s)
        if (rho_first[s] < start[s] || tau_first[s] < start[s])
            throw std::invalid_argument(
                "evaluate_subgame: strategies must not stop before sigma "
                "(scenario " + std::to_string(s) + ")");

    const std::vector<int> rho_settled = compose(tree, rho, tau);
    const std::vector<int> tau_settled = compose(tree, tau, rho);
    std::vector<double> values(tree.scenario_count());
    for (int s = 0; s < tree.scenario_count(); ++s)
        values[s] =
            payoffs.value_for_scenario(tree, p, rho_settled[s], tau_settled[s], s);
    return condition_at(tree, values, sigma);
}

}  // namespace stopgame
