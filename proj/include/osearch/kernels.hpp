#pragma once

// Batch evaluation of reservation-price policies over many sequences at once.
//
// Batches use a structure-of-arrays layout: the price at position `pos` of
// sequence `lane` is stored at `prices[pos * lanes + lane]`. Every kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant selected at
// runtime. Both produce identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace osearch::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// True if the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available() noexcept;

/// The variant used by the dispatching entry points. Honors the
/// OSEARCH_FORCE_SCALAR environment variable.
Isa active_isa() noexcept;

/// Accept the `hits_needed`-th price >= threshold, else the last price.
/// hits_needed = 1 gives R_p, 2 gives R_p^2. out.size() == lanes.
void reservation_batch_i32(std::span<const std::int32_t> prices, std::size_t lanes, std::size_t length,
                           std::int32_t threshold, int hits_needed, std::span<std::int32_t> out, Isa isa);
void reservation_batch_f64(std::span<const double> prices, std::size_t lanes, std::size_t length,
                           double threshold, int hits_needed, std::span<double> out, Isa isa);

/// Per-sequence maximum (OPT).
void max_batch_i32(std::span<const std::int32_t> prices, std::size_t lanes, std::size_t length,
                   std::span<std::int32_t> out, Isa isa);

inline void reservation_batch_i32(std::span<const std::int32_t> prices, std::size_t lanes, std::size_t length,
                                  std::int32_t threshold, int hits_needed, std::span<std::int32_t> out) {
    reservation_batch_i32(prices, lanes, length, threshold, hits_needed, out, active_isa());
}
inline void reservation_batch_f64(std::span<const double> prices, std::size_t lanes, std::size_t length,
                                  double threshold, int hits_needed, std::span<double> out) {
    reservation_batch_f64(prices, lanes, length, threshold, hits_needed, out, active_isa());
}
inline void max_batch_i32(std::span<const std::int32_t> prices, std::size_t lanes, std::size_t length,
                          std::span<std::int32_t> out) {
    max_batch_i32(prices, lanes, length, out, active_isa());
}

namespace scalar {
void reservation_i32(const std::int32_t* prices, std::size_t lanes, std::size_t length, std::int32_t threshold,
                     int hits_needed, std::int32_t* out);
void reservation_f64(const double* prices, std::size_t lanes, std::size_t length, double threshold,
                     int hits_needed, double* out);
void max_i32(const std::int32_t* prices, std::size_t lanes, std::size_t length, std::int32_t* out);
} // namespace scalar

#if defined(OSEARCH_HAVE_AVX2)
namespace avx2 {
void reservation_i32(const std::int32_t* prices, std::size_t lanes, std::size_t length, std::int32_t threshold,
                     int hits_needed, std::int32_t* out);
void reservation_f64(const double* prices, std::size_t lanes, std::size_t length, double threshold,
                     int hits_needed, double* out);
void max_i32(const std::int32_t* prices, std::size_t lanes, std::size_t length, std::int32_t* out);
} // namespace avx2
#endif

} // namespace osearch::kernels
