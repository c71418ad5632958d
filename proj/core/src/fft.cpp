#include "matterwave/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace matterwave {

namespace {
// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct SpectralTransform::Impl {
    int n = 0;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
    }
};

SpectralTransform::SpectralTransform(int n) : impl_(std::make_unique<Impl>()) {
    if (n < 2) throw std::invalid_argument("SpectralTransform: size must be >= 2");
    impl_->n = n;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE keeps plan selection deterministic run to run;
    // FFTW_UNALIGNED lets the plan execute on any caller buffer.
    impl_->fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    impl_->inv = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!impl_->fwd || !impl_->inv) throw std::runtime_error("SpectralTransform: planning failed");
}

SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

int SpectralTransform::size() const { return impl_->n; }

void SpectralTransform::forward(std::complex<double>* data) const {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(impl_->fwd, buf, buf);
}

void SpectralTransform::inverse(std::complex<double>* data) const {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(impl_->inv, buf, buf);
    const double scale = 1.0 / impl_->n;
    for (int i = 0; i < impl_->n; ++i) data[i] *= scale;
}

} // namespace matterwave
