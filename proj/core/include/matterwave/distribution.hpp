#pragma once

#include <cstddef>
#include <vector>

namespace matterwave {

enum class Basis { position, momentum, population };

const char* basis_name(Basis b);

// Probability mass function over measurement outcomes. Position/momentum
// distributions are densities on a uniform outcome lattice; the population
// basis is the two-outcome pair (P_a, P_b) with bin_width 1. For per-state
// distributions the outcome space is the |a> block followed by the |b>
// block of equal size.
struct Distribution {
    Basis basis = Basis::position;
    bool per_state = false;
    std::vector<double> outcomes; // bin centres
    std::vector<double> mass;     // density per bin (population: probability)
    double bin_width = 1.0;

    std::size_t block_size() const { return per_state ? mass.size() / 2 : mass.size(); }
    std::size_t block_count() const { return per_state ? 2 : 1; }
    double total() const; // sum(mass) * bin_width
};

} // namespace matterwave
