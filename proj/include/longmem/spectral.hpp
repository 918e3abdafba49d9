#pragma once

#include <cstddef>

#include "longmem/series.hpp"

namespace longmem {

// Fourier frequencies lambda_j = 2*pi*j/T for j = 1..floor((T-1)/2).
// The zero frequency and the Nyquist frequency (even T) are excluded.
std::vector<double> fourier_frequencies(std::size_t T);

// Periodogram at the first max_j Fourier frequencies (all of them when
// max_j = 0 or exceeds floor((T-1)/2)):
//   I(lambda_j) = |sum_{t=1}^T y_t e^{-i lambda_j t}|^2 / (2 pi T).
// The series is NOT demeaned; the mean only touches the excluded j = 0
// ordinate. Direct evaluation, O(T) per frequency.
std::vector<double> periodogram(const Series& y, std::size_t max_j = 0);

// Spectral shape of an ARFI(p,d) process up to the innovation variance:
//   g(lambda) = |2 sin(lambda/2)|^{-2d} * |1 - sum_k a_k e^{-ik lambda}|^{-2}.
// Frequencies must lie in (0, pi].
std::vector<double> arfi_spectral_shape(double d, const std::vector<double>& ar,
                                        const std::vector<double>& freqs);

namespace detail {
// Straightforward per-term evaluation kept as the testing reference for the
// table-based parallel kernel.
std::vector<double> periodogram_reference(const Series& y, std::size_t max_j = 0);
}  // namespace detail

}  // namespace longmem
