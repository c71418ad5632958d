#pragma once

#include <memory>
#include <vector>

namespace matterwave {

// Uniform periodic 1-D lattice together with its conjugate wavenumber
// lattice in spectral (FFT) order. Immutable after construction and cheap
// to copy, so it can be shared freely across workers.
class Grid {
public:
    Grid() = default;

    int n() const { return n_; }
    double z_min() const { return z_min_; }
    double z_max() const { return z_max_; }
    double dz() const { return dz_; }
    double length() const { return z_max_ - z_min_; }

    // Wavenumber spacing 2*pi/(z_max - z_min).
    double dk() const;

    const std::vector<double>& z() const { return tables_->z; }

    // Spectral-order wavenumbers: k_j = j*dk for j < n/2, (j-n)*dk above.
    const std::vector<double>& wavenumbers() const { return tables_->k; }

    // Spectral index of the j-th smallest wavenumber (monotone ordering).
    const std::vector<int>& ascending_order() const { return tables_->ascending; }

    bool same_lattice(const Grid& other) const {
        return n_ == other.n_ && z_min_ == other.z_min_ && z_max_ == other.z_max_;
    }

private:
    friend Grid make_grid(int n_points, double z_min, double z_max);

    struct Tables {
        std::vector<double> z;
        std::vector<double> k;
        std::vector<int> ascending;
    };

    int n_ = 0;
    double z_min_ = 0.0;
    double z_max_ = 0.0;
    double dz_ = 0.0;
    std::shared_ptr<const Tables> tables_;
};

// n_points must be a power of two (>= 2) and z_max > z_min.
Grid make_grid(int n_points, double z_min, double z_max);

} // namespace matterwave
