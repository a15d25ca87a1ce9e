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

#ifndef HAMPOW_GRAPH_VERTEX_SET_HPP
#define HAMPOW_GRAPH_VERTEX_SET_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace hampow {

using Vertex = int;
using BitWord = std::uint64_t;
inline constexpr int bits_per_word = 64;

/**
 * A subset of the vertex ids 0..n-1, stored as a dense bit vector.
 *
 * The universe size n is fixed at construction. Binary operations require
 * both operands to share the same universe; bits beyond n are always zero,
 * so popcounts never need masking.
 */
class VertexSet
{
    private:
        int _n = 0;
        std::vector<BitWord> _words;

        static auto words_for(int n) -> std::size_t
        {
            return static_cast<std::size_t>((n + bits_per_word - 1) / bits_per_word);
        }

        auto trim() -> void
        {
            if (_n % bits_per_word != 0 && ! _words.empty())
                _words.back() &= (BitWord{ 1 } << (_n % bits_per_word)) - 1;
        }

    public:
        VertexSet() = default;

        explicit VertexSet(int n) :
            _n(n),
            _words(words_for(n), 0)
        {
            if (n < 0)
                throw std::invalid_argument("VertexSet: negative universe size");
        }

        VertexSet(int n, std::initializer_list<Vertex> vs) :
            VertexSet(n)
        {
            for (auto v : vs)
                set(v);
        }

        static auto full(int n) -> VertexSet
        {
            VertexSet s(n);
            std::fill(s._words.begin(), s._words.end(), ~BitWord{ 0 });
            s.trim();
            return s;
        }

        template <typename Range>
        static auto from(int n, const Range & vs) -> VertexSet
        {
            VertexSet s(n);
            for (auto v : vs)
                s.set(static_cast<Vertex>(v));
            return s;
        }

        auto universe() const -> int { return _n; }

        auto set(Vertex v) -> void
        {
            _words[static_cast<std::size_t>(v) / bits_per_word] |= (BitWord{ 1 } << (v % bits_per_word));
        }

        auto reset(Vertex v) -> void
        {
            _words[static_cast<std::size_t>(v) / bits_per_word] &= ~(BitWord{ 1 } << (v % bits_per_word));
        }

        auto contains(Vertex v) const -> bool
        {
            if (v < 0 || v >= _n)
                return false;
            return (_words[static_cast<std::size_t>(v) / bits_per_word] >> (v % bits_per_word)) & 1;
        }

        auto count() const -> int
        {
            int result = 0;
            for (auto w : _words)
                result += std::popcount(w);
            return result;
        }

        auto empty() const -> bool
        {
            return std::all_of(_words.begin(), _words.end(), [] (BitWord w) { return w == 0; });
        }

        auto clear() -> void { std::fill(_words.begin(), _words.end(), 0); }

        /// Smallest member, or -1 if empty.
        auto first() const -> Vertex
        {
            for (std::size_t i = 0 ; i < _words.size() ; ++i)
                if (_words[i])
                    return static_cast<Vertex>(i * bits_per_word + std::countr_zero(_words[i]));
            return -1;
        }

        template <typename F>
        auto for_each(F && f) const -> void
        {
            for (std::size_t i = 0 ; i < _words.size() ; ++i) {
                auto w = _words[i];
                while (w) {
                    int b = std::countr_zero(w);
                    f(static_cast<Vertex>(i * bits_per_word + b));
                    w &= w - 1;
                }
            }
        }

        auto to_vector() const -> std::vector<Vertex>
        {
            std::vector<Vertex> result;
            result.reserve(static_cast<std::size_t>(count()));
            for_each([&] (Vertex v) { result.push_back(v); });
            return result;
        }

        auto words() const -> const std::vector<BitWord> & { return _words; }

        auto operator&= (const VertexSet & o) -> VertexSet &
        {
            for (std::size_t i = 0 ; i < _words.size() ; ++i)
                _words[i] &= o._words[i];
            return *this;
        }

        auto operator|= (const VertexSet & o) -> VertexSet &
        {
            for (std::size_t i = 0 ; i < _words.size() ; ++i)
                _words[i] |= o._words[i];
            return *this;
        }

        /// Set difference.
        auto operator-= (const VertexSet & o) -> VertexSet &
        {
            for (std::size_t i = 0 ; i < _words.size() ; ++i)
                _words[i] &= ~o._words[i];
            return *this;
        }

        friend auto operator& (VertexSet a, const VertexSet & b) -> VertexSet { return a &= b; }
        friend auto operator| (VertexSet a, const VertexSet & b) -> VertexSet { return a |= b; }
        friend auto operator- (VertexSet a, const VertexSet & b) -> VertexSet { return a -= b; }

        auto complement() const -> VertexSet
        {
            VertexSet s = *this;
            for (auto & w : s._words)
                w = ~w;
            s.trim();
            return s;
        }

        auto intersects(const VertexSet & o) const -> bool
        {
            for (std::size_t i = 0 ; i < _words.size() ; ++i)
                if (_words[i] & o._words[i])
                    return true;
            return false;
        }

        auto is_subset_of(const VertexSet & o) const -> bool
        {
            for (std::size_t i = 0 ; i < _words.size() ; ++i)
                if (_words[i] & ~o._words[i])
                    return false;
            return true;
        }

        /// |this ∩ o| without materialising the intersection.
        auto intersection_count(const VertexSet & o) const -> int
        {
            int result = 0;
            for (std::size_t i = 0 ; i < _words.size() ; ++i)
                result += std::popcount(_words[i] & o._words[i]);
            return result;
        }

        friend auto operator== (const VertexSet &, const VertexSet &) -> bool = default;
};

}

#endif
