#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace longmem {

using Series = std::vector<double>;

// Base class for every failure this library can signal. Callers that need to
// distinguish causes catch the concrete type; the CLI maps each one to a
// stable category string on stderr.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sample too short for the requested operation.
struct insufficient_data : error {
  using error::error;
};

// Input is formally valid but carries no usable signal (constant series,
// all-zero periodogram, zero-variance regression target).
struct degenerate_input : error {
  using error::error;
};

// An optimizer met a non-finite objective or could not produce a usable
// optimum. Carries the best point seen so the caller can inspect it.
struct estimation_failed : error {
  estimation_failed(const std::string& msg, double point, double value)
      : error(msg), best_point(point), best_value(value) {}
  double best_point;
  double best_value;
};

struct ingestion_error : error {
  using error::error;
};

struct fetch_error : error {
  using error::error;
};

struct transform_error : error {
  using error::error;
};

// Number of worker threads the parallel kernels may use. n <= 0 leaves the
// runtime default untouched. A no-op in serial builds.
void set_threads(int n);
int max_threads();

}  // namespace longmem
