#include "netens/relaxation.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace netens {

std::int64_t RelaxState::aggregate_excess() const {
    std::int64_t total = 0;
    for (std::int64_t z : excess) total += std::abs(z);
    return total;
}

bool RelaxState::at_rest() const {
    bool positive = false, negative = false;
    for (std::int64_t z : excess) {
        positive = positive || z > 0;
        negative = negative || z < 0;
    }
    return !(positive && negative);
}

RelaxState init_relaxation(const NodeTargets& targets) {
    targets.validate();
    if (!targets.integral())
        throw std::invalid_argument("init_relaxation: integer targets required");
    const int n = targets.n();
    Configuration allocation(GraphSpec{n, true, true, Statistics::bosonic});
    for (int i = 0; i < n; ++i)
        allocation.set_occupation(
            i, i, static_cast<std::uint64_t>(targets.endowments[static_cast<std::size_t>(i)]));
    return RelaxState{std::move(allocation), targets.excess_demand(), {}};
}

namespace {

int default_pick_agent(const std::vector<std::int64_t>& z) {
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] != 0) return static_cast<int>(i);
    return -1;
}

int default_pick_counterpart(const std::vector<std::int64_t>& z, int agent) {
    const std::int64_t zi = z[static_cast<std::size_t>(agent)];
    int best = -1;
    std::int64_t best_f = 0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (static_cast<int>(j) == agent || z[j] == 0) continue;
        if ((zi > 0) == (z[j] > 0)) continue;  // same-sign trades cannot reduce z
        const std::int64_t f = std::abs(zi + z[j]);
        if (best < 0 || f < best_f) {
            best = static_cast<int>(j);
            best_f = f;
        }
    }
    return best;
}

}  // namespace

void relaxation_step(RelaxState& state, const RelaxPolicy& policy) {
    if (state.at_rest()) throw std::logic_error("relaxation_step: already at rest");
    auto& z = state.excess;
    const int agent = policy.pick_agent ? policy.pick_agent(z) : default_pick_agent(z);
    if (agent < 0 || z[static_cast<std::size_t>(agent)] == 0)
        throw std::logic_error("relaxation_step: policy picked an agent with zero excess");
    const int partner = policy.pick_counterpart ? policy.pick_counterpart(z, agent)
                                                : default_pick_counterpart(z, agent);
    if (partner < 0) throw std::logic_error("relaxation_step: no opposite-sign counterpart");

    const std::int64_t zi = z[static_cast<std::size_t>(agent)];
    const std::int64_t zj = z[static_cast<std::size_t>(partner)];
    const std::int64_t quantity = std::min(std::abs(zi), std::abs(zj));
    const int giver = zi < 0 ? agent : partner;     // surplus side sheds goods
    const int receiver = zi < 0 ? partner : agent;

    // The giver releases unexchanged endowment from the diagonal.
    const std::uint64_t held = state.allocation.occupation(giver, giver);
    if (held < static_cast<std::uint64_t>(quantity))
        throw std::logic_error("relaxation_step: giver lacks unexchanged endowment");
    state.allocation.set_occupation(giver, giver, held - static_cast<std::uint64_t>(quantity));
    state.allocation.set_occupation(giver, receiver,
                                    state.allocation.occupation(giver, receiver) +
                                        static_cast<std::uint64_t>(quantity));
    z[static_cast<std::size_t>(giver)] += quantity;
    z[static_cast<std::size_t>(receiver)] -= quantity;

    Trade trade;
    trade.step = state.trades.size();
    trade.agent = agent;
    trade.counterpart = partner;
    trade.quantity = quantity;
    trade.aggregate_after = state.aggregate_excess();
    state.trades.push_back(trade);
}

RelaxState relax_to_rest(const NodeTargets& targets, const RelaxPolicy& policy) {
    RelaxState state = init_relaxation(targets);
    while (!state.at_rest()) relaxation_step(state, policy);
    return state;
}

}  // namespace netens
