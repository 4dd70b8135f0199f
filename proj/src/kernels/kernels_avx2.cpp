// Compiled with -mavx2; only called after a runtime CPU check.
#include "osearch/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace osearch::kernels::avx2 {

namespace {

constexpr std::size_t kI32Width = 8;
constexpr std::size_t kF64Width = 4;

} // namespace

void reservation_i32(const std::int32_t* prices, std::size_t lanes, std::size_t length, std::int32_t threshold,
                     int hits_needed, std::int32_t* out) {
    // x >= t  <=>  x > t - 1; threshold > INT32_MIN
    const __m256i below = _mm256_set1_epi32(threshold - 1);
    const __m256i needed = _mm256_set1_epi32(hits_needed);
    const __m256i one = _mm256_set1_epi32(1);

    std::size_t lane = 0;
    for (; lane + kI32Width <= lanes; lane += kI32Width) {
        __m256i hits = _mm256_setzero_si256();
        __m256i done = _mm256_setzero_si256();
        __m256i accepted = _mm256_setzero_si256();
        for (std::size_t pos = 0; pos < length; ++pos) {
            const __m256i x =
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prices + pos * lanes + lane));
            const __m256i hit = _mm256_andnot_si256(done, _mm256_cmpgt_epi32(x, below));
            hits = _mm256_add_epi32(hits, _mm256_and_si256(hit, one));
            const __m256i take = _mm256_and_si256(hit, _mm256_cmpeq_epi32(hits, needed));
            accepted = _mm256_blendv_epi8(accepted, x, take);
            done = _mm256_or_si256(done, take);
            if (pos + 1 == length) accepted = _mm256_blendv_epi8(x, accepted, done);
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + lane), accepted);
    }
    for (; lane < lanes; ++lane) {
        int count = 0;
        std::int32_t result = prices[(length - 1) * lanes + lane];
        for (std::size_t pos = 0; pos < length; ++pos) {
            const std::int32_t x = prices[pos * lanes + lane];
            if (x >= threshold && ++count == hits_needed) {
                result = x;
                break;
            }
        }
        out[lane] = result;
    }
}

void reservation_f64(const double* prices, std::size_t lanes, std::size_t length, double threshold,
                     int hits_needed, double* out) {
    const __m256d t = _mm256_set1_pd(threshold);
    const __m256d needed = _mm256_set1_pd(static_cast<double>(hits_needed));
    const __m256d one = _mm256_set1_pd(1.0);

    std::size_t lane = 0;
    for (; lane + kF64Width <= lanes; lane += kF64Width) {
        __m256d hits = _mm256_setzero_pd();
        __m256d done = _mm256_setzero_pd();
        __m256d accepted = _mm256_setzero_pd();
        for (std::size_t pos = 0; pos < length; ++pos) {
            const __m256d x = _mm256_loadu_pd(prices + pos * lanes + lane);
            const __m256d hit = _mm256_andnot_pd(done, _mm256_cmp_pd(x, t, _CMP_GE_OQ));
            hits = _mm256_add_pd(hits, _mm256_and_pd(hit, one));
            const __m256d take = _mm256_and_pd(hit, _mm256_cmp_pd(hits, needed, _CMP_EQ_OQ));
            accepted = _mm256_blendv_pd(accepted, x, take);
            done = _mm256_or_pd(done, take);
            if (pos + 1 == length) accepted = _mm256_blendv_pd(x, accepted, done);
        }
        _mm256_storeu_pd(out + lane, accepted);
    }
    for (; lane < lanes; ++lane) {
        int count = 0;
        double result = prices[(length - 1) * lanes + lane];
        for (std::size_t pos = 0; pos < length; ++pos) {
            const double x = prices[pos * lanes + lane];
            if (x >= threshold && ++count == hits_needed) {
                result = x;
                break;
            }
        }
        out[lane] = result;
    }
}

void max_i32(const std::int32_t* prices, std::size_t lanes, std::size_t length, std::int32_t* out) {
    std::size_t lane = 0;
    for (; lane + kI32Width <= lanes; lane += kI32Width) {
        __m256i best = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prices + lane));
        for (std::size_t pos = 1; pos < length; ++pos)
            best = _mm256_max_epi32(
                best, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prices + pos * lanes + lane)));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + lane), best);
    }
    for (; lane < lanes; ++lane) {
        std::int32_t best = prices[lane];
        for (std::size_t pos = 1; pos < length; ++pos) best = std::max(best, prices[pos * lanes + lane]);
        out[lane] = best;
    }
}

} // namespace osearch::kernels::avx2
