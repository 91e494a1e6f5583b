#pragma once
/**
 * @file
 * @brief Unsat counts over a grid of queue lengths and action grid sizes,
 * optionally next to the realizability verdict of each cell.
 */

#include <pshield/harness/config.hpp>
#include <pshield/realizability/checker.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pshield
{

struct UnsatMatrixConfig
{
    ExperimentConfig base; ///< policy, environment and shield settings shared by all cells
    std::vector<std::size_t> queue_lengths{1, 13, 100};
    std::vector<int> action_cells{3, 5, 30};
    bool verdicts = true;
    bool confirm = true; ///< brute-force every counterexample
    AdversarialDomain domain;
};

struct UnsatCell
{
    std::size_t queue_length = 0;
    int action_cells = 0;
    int episodes = 0;
    int unsat_episodes = 0;
    std::optional<RealizabilityVerdict::Kind> verdict;
    std::optional<bool> confirmed;
};

struct UnsatMatrix
{
    std::vector<std::size_t> queue_lengths;
    std::vector<int> action_cells;
    std::vector<UnsatCell> cells; ///< row-major, rows are queue lengths

    const UnsatCell &at (std::size_t row, std::size_t col) const { return cells[row * action_cells.size () + col]; }
    /// Counts never drop down a column and never rise along a row.
    bool ordered () const;
    /// Every realizable cell has zero unsat episodes and every counterexample was confirmed.
    bool consistent () const;
};

UnsatMatrix run_unsat_matrix (const UnsatMatrixConfig &cfg);

/// Text grid with R/U/? marks next to each count.
std::string render (const UnsatMatrix &m);
nlohmann::json to_json (const UnsatMatrix &m);

} // namespace pshield
