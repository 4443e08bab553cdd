#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scambait/rng.hpp"

namespace scambait {

// Randomized equal assignment: counts across strategies never differ by more
// than 1, and which items land where is uniform given that constraint.
// Deterministic in (item order, strategy order, seed).
//
// Returns one strategy index per item. Throws NoStrategies when the strategy
// list is empty or contains duplicates.
std::vector<std::size_t> assign_batch(std::size_t item_count, std::size_t strategy_count,
                                      std::uint64_t seed);

std::vector<std::string> assign_strategies(std::size_t item_count,
                                           std::span<const std::string> strategy_ids,
                                           std::uint64_t seed);

// Streaming variant: picks uniformly among the strategies currently holding
// the minimum count, preserving the global max-min <= 1 bound after every
// prefix.
std::size_t assign_incremental(std::span<const std::size_t> current_counts, SplitMix64& rng);

} // namespace scambait
