// Minimal iterative radix-2 FFT, enough for the autocorrelation path of
// the difference function and for spectrum checks in tests.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace monoscribe {

std::size_t next_pow2(std::size_t n);

/// In-place complex FFT; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

/// Magnitude spectrum of a real signal, zero-padded to the next power of
/// two (or n_fft if given). Returns n_fft/2 + 1 bins.
std::vector<double> magnitude_spectrum(const std::vector<double>& signal,
                                       std::size_t n_fft = 0);

}  // namespace monoscribe
