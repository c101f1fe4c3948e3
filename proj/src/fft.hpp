#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin FFTW wrappers. Planning is serialized internally; execution is reentrant.
namespace lrdfa::detail {

/// Non-negative-frequency half of the DFT of a real sequence (size/2 + 1 bins).
[[nodiscard]] std::vector<std::complex<double>> real_dft(std::span<const double> x);

/// Full linear convolution, length a.size() + b.size() - 1.
[[nodiscard]] std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// Smallest 2^a 3^b 5^c 7^d >= n.
[[nodiscard]] std::size_t fast_size(std::size_t n);

}  // namespace lrdfa::detail
