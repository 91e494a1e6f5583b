#pragma once

#include <cstdint>
#include <random>

namespace pshield
{

/// Seeded generator whose draws are identical across standard libraries
/// (std::uniform_real_distribution is not).
class Rng
{
public:
    explicit Rng (std::uint64_t seed = 0) : eng_ (seed) {}

    double uniform () { return static_cast<double> (eng_ () >> 11) * 0x1.0p-53; }
    double uniform (double lo, double hi) { return lo + (hi - lo) * uniform (); }
    int integer (int lo, int hi) { return lo + static_cast<int> (uniform () * (hi - lo + 1)); }
    double normal ();

private:
    std::mt19937_64 eng_;
};

/// Mixes a base seed with an index into an independent stream seed.
std::uint64_t derive_seed (std::uint64_t base, std::uint64_t index);

} // namespace pshield
