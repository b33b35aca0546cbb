#pragma once

#include <bit>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace segproc {

// pcg64 (XSL-RR 128/64, set-sequence variant).  Matches the reference
// generator bit for bit: distinct stream ids give independent sequences,
// and (seed, stream) fully determines every draw.  All samplers in this
// library take their randomness through the DrawSource concept below so
// tests can substitute scripted draws.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : inc_((static_cast<u128>(stream) << 1) | 1u), seed_(seed), stream_(stream) {
        state_ = 0;
        bump();
        state_ += seed;
        bump();
    }

    std::uint64_t next_u64() {
        bump();
        const auto hi = static_cast<std::uint64_t>(state_ >> 64);
        const auto lo = static_cast<std::uint64_t>(state_);
        const auto rot = static_cast<int>(state_ >> 122);
        return std::rotr(hi ^ lo, rot);
    }

    // 53-bit mantissa draw, uniform on [0,1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Symmetric sign: +1 when the underlying uniform lands in [1/2,1).
    // Equivalent to taking the top bit of the raw 64-bit word.
    double sign() {
        return uniform01() >= 0.5 ? 1.0 : -1.0;
    }

    // Stream for replication i of a block rooted at this stream's id.
    RngStream child(std::uint64_t offset) const {
        return RngStream(seed_, stream_ + offset);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    using u128 = unsigned __int128;
    static constexpr u128 mult_ =
        (static_cast<u128>(0x2360ed051fc65da4ull) << 64) | 0x4385df649fccf645ull;

    void bump() { state_ = state_ * mult_ + inc_; }

    u128 state_{};
    u128 inc_;
    std::uint64_t seed_;
    std::uint64_t stream_;
};

// Scripted replacement for RngStream.  Hands out a fixed list of uniforms
// and throws once the list is exhausted, so a test that consumes more
// randomness than it scripted fails loudly instead of silently recycling.
class ForcedDraws {
public:
    explicit ForcedDraws(std::vector<double> draws) : draws_(std::move(draws)) {}
    explicit ForcedDraws(std::span<const double> draws)
        : draws_(draws.begin(), draws.end()) {}

    double uniform01() {
        if (next_ >= draws_.size())
            throw std::out_of_range("ForcedDraws: draw sequence exhausted");
        return draws_[next_++];
    }

    double sign() { return uniform01() >= 0.5 ? 1.0 : -1.0; }

    std::size_t remaining() const { return draws_.size() - next_; }

private:
    std::vector<double> draws_;
    std::size_t next_ = 0;
};

template <typename S>
concept DrawSource = requires(S s) {
    { s.uniform01() } -> std::convertible_to<double>;
    { s.sign() } -> std::convertible_to<double>;
};

static_assert(DrawSource<RngStream>);
static_assert(DrawSource<ForcedDraws>);

}  // namespace segproc
