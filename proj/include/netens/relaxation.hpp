#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "netens/core.hpp"

namespace netens {

struct Trade {
    std::uint64_t step = 0;
    int agent = 0;        // acting agent
    int counterpart = 0;  // chosen partner; goods flow from the negative-excess side
    std::int64_t quantity = 0;
    std::int64_t aggregate_after = 0;  // sum |z_i| after the trade
};

/// Decentralized exchange state: the allocation matrix W (bosonic, directed,
/// self-loops hold the unexchanged endowment), the remaining excess demand
/// z_i per agent, and the trade log. Sum |z_i| never increases along a run.
struct RelaxState {
    Configuration allocation;
    std::vector<std::int64_t> excess;
    std::vector<Trade> trades;

    std::int64_t aggregate_excess() const;
    /// Rest: no pair of opposite-sign nonzero excesses remains.
    bool at_rest() const;
};

/// Agent/counterpart selection; empty functions mean the default rules
/// (lowest index with z != 0 acts; counterpart minimizes |z_i + z_j| over
/// opposite-sign partners, ties to the lowest index). The default is
/// deterministic; alternative policies plug in here.
struct RelaxPolicy {
    std::function<int(const std::vector<std::int64_t>&)> pick_agent;
    std::function<int(const std::vector<std::int64_t>&, int)> pick_counterpart;
};

/// Starting configuration W = diag(omega): nothing exchanged yet, so
/// z_i = x*_i - omega_i.
RelaxState init_relaxation(const NodeTargets& targets);

/// One bilateral trade of min(|z_i|, |z_j|) units. Throws std::logic_error
/// at a rest state.
void relaxation_step(RelaxState& state, const RelaxPolicy& policy = {});

/// Iterates to rest. Balanced targets finish with z = 0 after at most N-1
/// trades, each zeroing at least one agent; the terminal allocation has row
/// sums omega and column sums x* exactly.
RelaxState relax_to_rest(const NodeTargets& targets, const RelaxPolicy& policy = {});

}  // namespace netens
