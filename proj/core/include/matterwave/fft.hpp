#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace matterwave {

// In-place complex transform between the position and spectral lattices.
// forward() is the plain DFT sum_i x_i e^{-2 pi i ij/n}; inverse() carries
// the 1/n factor so forward-then-inverse is an exact round trip.
// Instances are not thread-safe; give each worker its own.
class SpectralTransform {
public:
    explicit SpectralTransform(int n);
    ~SpectralTransform();

    SpectralTransform(SpectralTransform&&) noexcept;
    SpectralTransform& operator=(SpectralTransform&&) noexcept;
    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    int size() const;

    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

    void forward(std::vector<std::complex<double>>& v) const { forward(v.data()); }
    void inverse(std::vector<std::complex<double>>& v) const { inverse(v.data()); }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace matterwave
