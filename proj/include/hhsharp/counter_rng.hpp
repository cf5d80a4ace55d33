#pragma once

#include <array>
#include <cstdint>

namespace hhsharp
{

/// SplitMix64 finalizer; used to derive Philox keys from (seed, stream).
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A draw is a pure function of (key, counter), so any sample index can be
/// generated independently of every other one. Streams are separated by
/// hashing a stream id into the key.
class CounterRng
{
  public:
    using Block = std::array<std::uint32_t, 4>;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
    {
        const std::uint64_t k = splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
        key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    }

    /// Raw-key construction, for known-answer checks against Random123.
    static CounterRng with_raw_key(std::uint32_t k0, std::uint32_t k1)
    {
        CounterRng rng(0);
        rng.key_ = {k0, k1};
        return rng;
    }

    Block block(const Block& counter) const
    {
        Block ctr = counter;
        std::array<std::uint32_t, 2> key = key_;
        for (int round = 0; round < 10; ++round)
        {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

    /// Two independent uniforms in [0, 1) with 53-bit resolution, addressed by
    /// (index, a, b).
    std::array<double, 2> uniform2(std::uint64_t index, std::uint32_t a, std::uint32_t b) const
    {
        const Block out = block({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), a, b});
        const std::uint64_t w0 = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
        const std::uint64_t w1 = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
        return {to_unit(w0), to_unit(w1)};
    }

    /// Single uniform in [0, 1); slot selects one of a pair of draws.
    double uniform(std::uint64_t index, std::uint32_t a, std::uint32_t slot) const
    {
        return uniform2(index, a, slot / 2)[slot % 2];
    }

    double uniform(std::uint64_t index, std::uint32_t a, std::uint32_t slot, double lo, double hi) const
    {
        return lo + (hi - lo) * uniform(index, a, slot);
    }

  private:
    static double to_unit(std::uint64_t w) { return static_cast<double>(w >> 11) * 0x1.0p-53; }

    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

    std::array<std::uint32_t, 2> key_;
};

}  // namespace hhsharp
