#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace arcring {

#ifndef ARCRING_VERSION
#define ARCRING_VERSION "0.1.0"
#endif

inline const char* version() { return ARCRING_VERSION; }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumeration bound exceeded or input out of the supported range.
struct SizeError : Error {
  using Error::Error;
};

/// Boundary sequences of glued/composed diagrams do not match.
struct BoundaryError : Error {
  using Error::Error;
};

/// Structural mismatch: incompatible rings, specs or schedules.
struct StructuralError : Error {
  using Error::Error;
};

/// Non-admissible weight.
struct WeightError : Error {
  using Error::Error;
};

/// Diagram construction precondition violated.
struct ConstructionError : Error {
  using Error::Error;
};

// Checked 64-bit arithmetic for diagram-combination coefficients.
// Laurent coefficients use arbitrary precision; combo coefficients stay
// tiny at desk scale, so a checked int64 keeps the hot maps light.
inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in coefficient addition");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in coefficient multiplication");
  return r;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers
/// (0 = hardware concurrency). fn must only write to per-index state.
template <class F>
void parallel_for(std::size_t count, F&& fn, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr err;
  std::mutex err_mtx;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mtx);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace arcring
