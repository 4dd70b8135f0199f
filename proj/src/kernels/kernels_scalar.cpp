#include "osearch/kernels.hpp"

#include <algorithm>

namespace osearch::kernels::scalar {

namespace {

template <typename T>
void reservation(const T* prices, std::size_t lanes, std::size_t length, T threshold, int hits_needed, T* out) {
    for (std::size_t lane = 0; lane < lanes; ++lane) {
        int hits = 0;
        T accepted = prices[(length - 1) * lanes + lane];
        for (std::size_t pos = 0; pos < length; ++pos) {
            const T x = prices[pos * lanes + lane];
            if (x >= threshold && ++hits == hits_needed) {
                accepted = x;
                break;
            }
        }
        out[lane] = accepted;
    }
}

} // namespace

void reservation_i32(const std::int32_t* prices, std::size_t lanes, std::size_t length, std::int32_t threshold,
                     int hits_needed, std::int32_t* out) {
    reservation(prices, lanes, length, threshold, hits_needed, out);
}

void reservation_f64(const double* prices, std::size_t lanes, std::size_t length, double threshold,
                     int hits_needed, double* out) {
    reservation(prices, lanes, length, threshold, hits_needed, out);
}

void max_i32(const std::int32_t* prices, std::size_t lanes, std::size_t length, std::int32_t* out) {
    for (std::size_t lane = 0; lane < lanes; ++lane) {
        std::int32_t best = prices[lane];
        for (std::size_t pos = 1; pos < length; ++pos) best = std::max(best, prices[pos * lanes + lane]);
        out[lane] = best;
    }
}

} // namespace osearch::kernels::scalar
