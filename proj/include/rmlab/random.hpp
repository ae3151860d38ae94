#pragma once

#include <cstdint>
#include <random>

namespace rmlab {

/// Default master seed when neither --seed nor RMLAB_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20190725;

/// SplitMix64 finalizer; used to derive substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seeded random stream with counter-based splitting.
///
/// A stream is identified by its 64-bit key. `substream(i)` derives the key
/// splitmix64(key ^ splitmix64(i + 0x9E3779B97F4A7C15)) from the parent key
/// alone, never from the parent's draw state, so the stream for trial i is
/// the same no matter how trials are scheduled across threads.
///
/// Variates are generated in-house from the raw 64-bit engine output so
/// the sequence is identical on every standard library.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key), engine_(splitmix64(key)) {}

    std::uint64_t key() const { return key_; }
    RandomStream substream(std::uint64_t index) const;

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform();
    /// Standard normal (Marsaglia polar method).
    double normal();

private:
    std::uint64_t key_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

} // namespace rmlab
