#pragma once

#include <cstdint>
#include <cstring>

namespace xrrmeta {

// splitmix64 finalizer; also used to chain stream keys
std::uint64_t mix64(std::uint64_t x);

inline std::uint64_t bits_of(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof u);
    return u;
}

// Independent stream key from structured coordinates. Streams derived from
// distinct coordinate tuples are unrelated, which keeps every Monte Carlo
// replicate reproducible regardless of scheduling.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0);

// Small counter-based generator (splitmix64 core), cheap to construct per
// replicate. Sampling routines are hand-rolled so that results do not depend
// on any library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();                    // [0, 1)
    double normal();                     // standard normal (polar method)
    double gamma(double shape);          // unit scale, shape > 0
    double beta(double a, double b);
    int binomial(int n, double p);       // inversion walk; intended for modest n
    int poisson(double lambda);          // Knuth below 12, PTRS rejection above

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace xrrmeta
