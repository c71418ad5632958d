#include "matterwave/distribution.hpp"

namespace matterwave {

const char* basis_name(Basis b) {
    switch (b) {
        case Basis::position: return "position";
        case Basis::momentum: return "momentum";
        case Basis::population: return "population";
    }
    return "?";
}

double Distribution::total() const {
    double sum = 0.0;
    for (double m : mass) sum += m;
    return sum * bin_width;
}

} // namespace matterwave
