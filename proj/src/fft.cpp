#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace lrdfa::detail {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t n) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

class Plan {
public:
    explicit Plan(fftw_plan plan) : plan_(plan) {}
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

Plan make_r2c(int n, double* in, fftw_complex* out) {
    std::lock_guard lock(planner_mutex());
    return Plan(fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE));
}

Plan make_c2r(int n, fftw_complex* in, double* out) {
    std::lock_guard lock(planner_mutex());
    return Plan(fftw_plan_dft_c2r_1d(n, in, out, FFTW_ESTIMATE));
}

}  // namespace

std::size_t fast_size(std::size_t n) {
    std::size_t best = 1;
    while (best < n) best *= 2;
    for (std::size_t p7 = 1; p7 < best; p7 *= 7) {
        for (std::size_t p5 = p7; p5 < best; p5 *= 5) {
            for (std::size_t p3 = p5; p3 < best; p3 *= 3) {
                std::size_t v = p3;
                while (v < n) v *= 2;
                best = std::min(best, v);
            }
        }
    }
    return best;
}

std::vector<std::complex<double>> real_dft(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t bins = n / 2 + 1;
    auto in = allocate<double>(n);
    auto out = allocate<fftw_complex>(bins);
    Plan plan = make_r2c(static_cast<int>(n), in.get(), out.get());
    std::copy(x.begin(), x.end(), in.get());
    plan.execute();
    std::vector<std::complex<double>> result(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        result[k] = {out[k][0], out[k][1]};
    }
    return result;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t full = a.size() + b.size() - 1;
    const std::size_t n = fast_size(full);
    const std::size_t bins = n / 2 + 1;

    auto ra = allocate<double>(n);
    auto rb = allocate<double>(n);
    auto ca = allocate<fftw_complex>(bins);
    auto cb = allocate<fftw_complex>(bins);
    std::fill(ra.get(), ra.get() + n, 0.0);
    std::fill(rb.get(), rb.get() + n, 0.0);
    std::copy(a.begin(), a.end(), ra.get());
    std::copy(b.begin(), b.end(), rb.get());

    {
        Plan pa = make_r2c(static_cast<int>(n), ra.get(), ca.get());
        Plan pb = make_r2c(static_cast<int>(n), rb.get(), cb.get());
        pa.execute();
        pb.execute();
    }
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = ca[k][0] * cb[k][0] - ca[k][1] * cb[k][1];
        const double im = ca[k][0] * cb[k][1] + ca[k][1] * cb[k][0];
        ca[k][0] = re;
        ca[k][1] = im;
    }
    Plan inverse = make_c2r(static_cast<int>(n), ca.get(), ra.get());
    inverse.execute();

    std::vector<double> out(full);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < full; ++i) {
        out[i] = ra[i] * scale;
    }
    return out;
}

}  // namespace lrdfa::detail
