#include "matterwave/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace matterwave {

namespace {

bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

} // namespace

double Grid::dk() const { return 2.0 * std::numbers::pi / length(); }

Grid make_grid(int n_points, double z_min, double z_max) {
    if (!power_of_two(n_points)) {
        throw std::invalid_argument("make_grid: n_points must be a power of two >= 2, got " +
                                    std::to_string(n_points));
    }
    if (!(z_max > z_min)) {
        throw std::invalid_argument("make_grid: z_max must exceed z_min, got [" +
                                    std::to_string(z_min) + ", " + std::to_string(z_max) + "]");
    }

    Grid g;
    g.n_ = n_points;
    g.z_min_ = z_min;
    g.z_max_ = z_max;
    g.dz_ = (z_max - z_min) / n_points;

    auto tables = std::make_shared<Grid::Tables>();
    tables->z.resize(n_points);
    tables->k.resize(n_points);
    tables->ascending.resize(n_points);

    const double dk = 2.0 * std::numbers::pi / (z_max - z_min);
    for (int i = 0; i < n_points; ++i) {
        tables->z[i] = z_min + i * g.dz_;
        const int j = i < n_points / 2 ? i : i - n_points;
        tables->k[i] = j * dk;
    }
    // Monotone ordering: the negative-frequency half precedes the rest.
    for (int i = 0; i < n_points; ++i) {
        tables->ascending[i] = (i + n_points / 2) % n_points;
    }

    g.tables_ = std::move(tables);
    return g;
}

} // namespace matterwave
