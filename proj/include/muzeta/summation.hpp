// summation.hpp
//
// Compensated (Kahan) accumulation and a deterministic chunked reduction.
// Chunk boundaries depend only on the index range, never on the thread
// count, so results are bit-identical between serial and parallel runs.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace muzeta {

// Classic Kahan compensated accumulator.
template <typename T = double>
class KahanSum {
  public:
    void add(T x) {
        T y = x - comp_;
        T t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    T value() const { return sum_; }

  private:
    T sum_ = 0;
    T comp_ = 0;
};

// Sum term(i) for i in [first, last] (inclusive), splitting the range into
// fixed-size chunks.  Each chunk is accumulated with Kahan compensation and
// the chunk partials are combined in index order at long double precision.
// The chunking is a pure function of the range, so enabling OpenMP changes
// only wall time, not the result.
template <typename TermFn>
double chunked_sum(std::int64_t first, std::int64_t last, TermFn&& term,
                   std::int64_t chunk = (1 << 20)) {
    if (last < first) return 0.0;
    const std::int64_t n_chunks = (last - first) / chunk + 1;
    if (n_chunks == 1) {
        KahanSum<double> acc;
        for (std::int64_t i = first; i <= last; ++i) acc.add(term(i));
        return acc.value();
    }
    std::vector<double> partial(static_cast<std::size_t>(n_chunks), 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        const std::int64_t lo = first + c * chunk;
        const std::int64_t hi = std::min(last, lo + chunk - 1);
        KahanSum<double> acc;
        for (std::int64_t i = lo; i <= hi; ++i) acc.add(term(i));
        partial[static_cast<std::size_t>(c)] = acc.value();
    }
    KahanSum<long double> total;
    for (double p : partial) total.add(p);
    return static_cast<double>(total.value());
}

}  // namespace muzeta
