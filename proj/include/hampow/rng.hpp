// Copyright 2026 The hampow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HAMPOW_RNG_HPP
#define HAMPOW_RNG_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace hampow {

/**
 * Pinned 64-bit generator so that seeded outputs are portable.
 *
 * Seed mapping: state = splitmix64(seed), replaced by 0x9E3779B97F4A7C15 if
 * that is zero. Step: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output
 * x * 0x2545F4914F6CDD1D (xorshift64*). uniform() = (next() >> 11) * 2^-53.
 */
class Rng
{
    private:
        std::uint64_t _state;

        static auto splitmix64(std::uint64_t z) -> std::uint64_t
        {
            z += 0x9E3779B97F4A7C15ULL;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }

    public:
        using result_type = std::uint64_t;

        explicit Rng(std::uint64_t seed) :
            _state(splitmix64(seed))
        {
            if (_state == 0)
                _state = 0x9E3779B97F4A7C15ULL;
        }

        static constexpr auto min() -> result_type { return 0; }
        static constexpr auto max() -> result_type { return ~result_type{ 0 }; }

        auto next() -> std::uint64_t
        {
            _state ^= _state >> 12;
            _state ^= _state << 25;
            _state ^= _state >> 27;
            return _state * 0x2545F4914F6CDD1DULL;
        }

        auto operator() () -> result_type { return next(); }

        /// Uniform double in [0,1).
        auto uniform() -> double
        {
            return static_cast<double>(next() >> 11) * 0x1.0p-53;
        }

        /// Uniform integer in [0, bound); bound > 0. Rejection sampling, no modulo bias.
        auto below(std::uint64_t bound) -> std::uint64_t
        {
            std::uint64_t limit = max() - max() % bound;
            std::uint64_t x;
            do
                x = next();
            while (x >= limit);
            return x % bound;
        }

        /// Child generator for an independent stream, e.g. one per retry.
        auto split() -> Rng { return Rng(next()); }
};

/// Fisher-Yates; defined here rather than std::shuffle so the permutation is portable.
template <typename T>
auto shuffle(std::vector<T> & v, Rng & rng) -> void
{
    for (std::size_t i = v.size() ; i > 1 ; --i) {
        auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}

#endif
