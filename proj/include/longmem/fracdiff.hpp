#pragma once

#include <cstddef>
#include <memory>

#include "longmem/series.hpp"

namespace longmem {

// First n coefficients of the truncated expansion of (1-L)^d:
//   pi_0 = 1,  pi_j = pi_{j-1} * (j-1-d)/j.
// For d a nonnegative integer the sequence terminates in exact zeros.
Series pi_coeffs(double d, std::size_t n);

// Shared cache for pi_coeffs keyed on the exact bit pattern of d. The
// returned vector has at least n entries (possibly more); entries are
// identical to a fresh pi_coeffs call regardless of how the cache grew.
// Safe for concurrent readers.
std::shared_ptr<const Series> pi_coeffs_cached(double d, std::size_t n);

// Truncated (type II) fractional difference:
//   (frac_diff(x,d))_t = sum_{j=0}^{t-1} pi_j(d) x_{t-j},  t = 1..T.
// Only observed values enter: the filter sees zeros before the sample start.
Series frac_diff(const Series& x, double d);

// Truncated fractional integration, the exact inverse of frac_diff on the
// same sample: frac_diff(frac_integrate(x, d), d) == x.
Series frac_integrate(const Series& x, double d);

// r_t = sum_{j=0}^{t-1} pi_j(d), t = 1..T: the response of the truncated
// filter to a constant. Identity: r_t = pi_{t-1}(d-1).
Series r_sequence(double d, std::size_t T);

namespace detail {
// Textbook serial convolution used to validate the parallel kernel.
Series frac_filter_reference(const Series& x, double d);
}  // namespace detail

}  // namespace longmem
