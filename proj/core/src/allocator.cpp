#include "scambait/allocator.hpp"

#include <algorithm>
#include <set>

#include "scambait/errors.hpp"

namespace scambait {

std::vector<std::size_t> assign_batch(std::size_t item_count, std::size_t strategy_count,
                                      std::uint64_t seed) {
    if (strategy_count == 0) throw NoStrategies("cannot assign without strategies");
    SplitMix64 rng(seed);

    // which strategies receive the remainder is itself a uniform choice
    const std::size_t base = item_count / strategy_count;
    const std::size_t remainder = item_count % strategy_count;
    std::vector<std::size_t> order(strategy_count);
    for (std::size_t i = 0; i < strategy_count; ++i) order[i] = i;
    rng.shuffle(order);

    std::vector<std::size_t> labels;
    labels.reserve(item_count);
    for (std::size_t rank = 0; rank < strategy_count; ++rank) {
        const std::size_t count = base + (rank < remainder ? 1 : 0);
        labels.insert(labels.end(), count, order[rank]);
    }
    rng.shuffle(labels);
    return labels;
}

std::vector<std::string> assign_strategies(std::size_t item_count,
                                           std::span<const std::string> strategy_ids,
                                           std::uint64_t seed) {
    if (strategy_ids.empty()) throw NoStrategies("cannot assign without strategies");
    std::set<std::string_view> unique(strategy_ids.begin(), strategy_ids.end());
    if (unique.size() != strategy_ids.size())
        throw NoStrategies("duplicate strategy ids in assignment");

    const std::vector<std::size_t> labels = assign_batch(item_count, strategy_ids.size(), seed);
    std::vector<std::string> out;
    out.reserve(item_count);
    for (std::size_t label : labels) out.push_back(strategy_ids[label]);
    return out;
}

std::size_t assign_incremental(std::span<const std::size_t> current_counts, SplitMix64& rng) {
    if (current_counts.empty()) throw NoStrategies("cannot assign without strategies");
    const std::size_t min_count = *std::min_element(current_counts.begin(), current_counts.end());
    std::vector<std::size_t> minima;
    for (std::size_t i = 0; i < current_counts.size(); ++i)
        if (current_counts[i] == min_count) minima.push_back(i);
    return minima[rng.below(minima.size())];
}

} // namespace scambait
