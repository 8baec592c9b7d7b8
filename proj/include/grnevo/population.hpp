#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "grnevo/fitness.hpp"
#include "grnevo/model.hpp"

namespace grnevo {

/// Raw fitness of a genotype. The seed selects the random initial state of the
/// underlying simulations, so (genotype, seed) -> raw is a pure function.
using RawFunction = std::function<double(const Genotype&, std::uint64_t seed)>;

/// A population member. `seed` reproduces `fitness.raw` exactly.
struct Member {
    Genotype genotype;
    FitnessValue fitness;
    std::uint64_t seed = 0;
};

struct PruneEvent {
    int generation = 0;
    int member = 0;
    std::vector<Slot> zeroed;
    double raw_before = 0.0;
    double raw_after = 0.0;
};

/// Runs fn(0..count-1) on up to `workers` threads. Exceptions are rethrown
/// after all workers finish.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

} // namespace grnevo
