#ifndef FRAMEDIAG_UTIL_HPP
#define FRAMEDIAG_UTIL_HPP

#include <cstdint>

namespace framediag {

/// Visitor assembled from a set of lambdas.
template <typename... Functors>
struct overloaded : Functors... {
    using Functors::operator()...;
};
template <typename... Functors>
overloaded(Functors...) -> overloaded<Functors...>;

/// SplitMix64 finalizer.  Used to derive independent RNG streams from a
/// user seed and stream indices.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed) noexcept { return mix64(seed); }

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, Rest... rest) noexcept {
    return derive_seed(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL), rest...);
}

}  // namespace framediag

#endif  // FRAMEDIAG_UTIL_HPP
