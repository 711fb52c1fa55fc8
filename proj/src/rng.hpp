#pragma once

#include <cstdint>

namespace pwcsim {

// Deterministic splittable generator.
//
// Seed -> stream contract: a generator seeded with s starts at state
// mix64(s) and advances by the splitmix64 increment, where mix64 is the
// splitmix64 finalizer.  stream(id) derives the child generator seeded with
// mix64(s ^ mix64(id + GOLDEN)).  Derivation is hierarchical and pure:
// child streams are fixed by (seed, id path) alone, so scan points,
// detectors and Monte-Carlo repeats can each own a stream and a run is
// reproducible regardless of evaluation order or thread count.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    // Child generator for this generator's seed and the given id.
    Rng stream(std::uint64_t id) const;

    std::uint64_t next_u64();

    // Uniform double in [0, 1) with 53 random bits.
    double uniform();

    // Poisson sample with the given mean.  Sequential CDF inversion below
    // mean 10; Hormann's PTRS transformed rejection above.  Both are exact
    // (the output distribution is Poisson up to double rounding), which the
    // tests check against the CDF.  Throws std::domain_error for mean < 0.
    std::uint64_t poisson(double mean);

    static std::uint64_t mix64(std::uint64_t x);

  private:
    std::uint64_t state_;
    std::uint64_t seed_;
};

}  // namespace pwcsim
