#include <cstdlib>
#include <stdexcept>

#include "osearch/kernels.hpp"

namespace osearch::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() noexcept {
#if defined(OSEARCH_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

Isa active_isa() noexcept {
    static const Isa isa = [] {
        if (const char* force = std::getenv("OSEARCH_FORCE_SCALAR"); force && *force && *force != '0')
            return Isa::Scalar;
        return avx2_available() ? Isa::Avx2 : Isa::Scalar;
    }();
    return isa;
}

namespace {

void check_shape(std::size_t in_size, std::size_t out_size, std::size_t lanes, std::size_t length) {
    if (length == 0) throw std::invalid_argument("kernel batch needs sequences of length >= 1");
    if (in_size < lanes * length) throw std::invalid_argument("kernel input batch too small");
    if (out_size < lanes) throw std::invalid_argument("kernel output batch too small");
}

void require_avx2() {
    if (!avx2_available()) throw std::runtime_error("AVX2 kernels requested but not available");
}

} // namespace

void reservation_batch_i32(std::span<const std::int32_t> prices, std::size_t lanes, std::size_t length,
                           std::int32_t threshold, int hits_needed, std::span<std::int32_t> out, Isa isa) {
    check_shape(prices.size(), out.size(), lanes, length);
#if defined(OSEARCH_HAVE_AVX2)
    if (isa == Isa::Avx2) {
        require_avx2();
        avx2::reservation_i32(prices.data(), lanes, length, threshold, hits_needed, out.data());
        return;
    }
#else
    if (isa == Isa::Avx2) require_avx2();
#endif
    scalar::reservation_i32(prices.data(), lanes, length, threshold, hits_needed, out.data());
}

void reservation_batch_f64(std::span<const double> prices, std::size_t lanes, std::size_t length,
                           double threshold, int hits_needed, std::span<double> out, Isa isa) {
    check_shape(prices.size(), out.size(), lanes, length);
#if defined(OSEARCH_HAVE_AVX2)
    if (isa == Isa::Avx2) {
        require_avx2();
        avx2::reservation_f64(prices.data(), lanes, length, threshold, hits_needed, out.data());
        return;
    }
#else
    if (isa == Isa::Avx2) require_avx2();
#endif
    scalar::reservation_f64(prices.data(), lanes, length, threshold, hits_needed, out.data());
}

void max_batch_i32(std::span<const std::int32_t> prices, std::size_t lanes, std::size_t length,
                   std::span<std::int32_t> out, Isa isa) {
    check_shape(prices.size(), out.size(), lanes, length);
#if defined(OSEARCH_HAVE_AVX2)
    if (isa == Isa::Avx2) {
        require_avx2();
        avx2::max_i32(prices.data(), lanes, length, out.data());
        return;
    }
#else
    if (isa == Isa::Avx2) require_avx2();
#endif
    scalar::max_i32(prices.data(), lanes, length, out.data());
}

} // namespace osearch::kernels
