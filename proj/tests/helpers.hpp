/*
   Copyright 2026 The mzw authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef MZW_TESTS_HELPERS_HPP
#define MZW_TESTS_HELPERS_HPP

#include <cstdlib>
#include <random>
#include <string>

#include "mzw/frobenius.hpp"

namespace mzw::testing {

/// Seed for the property-test corpora; MZW_SEED overrides the default so
/// failures can be replayed. Record the seed in failure messages.
inline unsigned long corpus_seed(unsigned long fallback = 20260810UL) {
    if (const char* env = std::getenv("MZW_SEED")) {
        const unsigned long v = std::strtoul(env, nullptr, 10);
        if (v != 0) return v;
    }
    return fallback;
}

/// The matrix entries the random corpus draws from. Mostly small units so
/// that exact characteristic-polynomial arithmetic of high symmetric powers
/// stays desk-scale; all values sit in the allowed set {+-1, +-2, +-1/2, 3}.
inline Rat random_entry(std::mt19937_64& rng) {
    static const Rat values[] = {Rat(1), Rat(-1), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2), Rat(3)};
    std::uniform_int_distribution<int> pick(0, 8);
    return values[pick(rng)];
}

inline RatMat random_invertible(std::mt19937_64& rng, int size) {
    while (true) {
        RatMat m(size, size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) m.at(i, j) = random_entry(rng);
        if (!m.det().is_zero()) return m;
    }
}

/// Random graded object with degrees in [-2, 4] and blocks up to 3x3.
/// Parity totals are capped (even <= 3, odd <= 3). Symmetric powers of the
/// even part grow like binomials in its dimension, so the 3x3 blocks are
/// placed on odd degrees where exterior combinatorics bounds everything;
/// exact order-20 class arithmetic stays desk-scale.
inline FrobObj random_frob(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ndeg_pick(1, 3);
    std::uniform_int_distribution<int> deg_pick(-2, 4);
    std::uniform_int_distribution<int> size_pick(0, 5);
    const int ndeg = ndeg_pick(rng);
    std::map<int, RatMat> pieces;
    int even_left = 3, odd_left = 3;
    for (int k = 0; k < ndeg; ++k) {
        const int deg = deg_pick(rng);
        if (pieces.count(deg)) continue;
        const bool even = deg % 2 == 0;
        int& left = even ? even_left : odd_left;
        if (left == 0) continue;
        static const int even_sizes[] = {1, 1, 1, 1, 2, 2};
        static const int odd_sizes[] = {1, 1, 1, 2, 2, 3};
        const int size = std::min(even ? even_sizes[size_pick(rng)] : odd_sizes[size_pick(rng)], left);
        left -= size;
        pieces.emplace(deg, random_invertible(rng, size));
    }
    if (pieces.empty()) pieces.emplace(0, RatMat::identity(1));
    return frob_generic(pieces);
}

inline std::string data_path(const std::string& name) {
    return std::string(MZW_TEST_DATA_DIR) + "/" + name;
}

/// q^i-palindromic piece at degree i: a direct sum of companion blocks of
/// 1 - a T + q^i T^2 (roots multiply to q^i), so the piece is isomorphic to
/// its own dual twisted by L^i at class level.
inline RatMat random_palindromic_piece(std::mt19937_64& rng, int degree, const Rat& q, int blocks) {
    std::uniform_int_distribution<long> a_pick(-2, 2);
    RatMat out(0, 0);
    for (int b = 0; b < blocks; ++b) {
        RatMat blk(2, 2);
        const Rat qi = q.pow(degree);
        blk.at(0, 1) = -qi;
        blk.at(1, 0) = Rat(1);
        blk.at(1, 1) = Rat(a_pick(rng));
        out = out.rows() == 0 ? blk : block_diag(out, blk);
    }
    return out;
}

/// Synthetic object of "dimension" d satisfying Poincare duality degreewise:
/// every piece is q^i-palindromic and the upper half mirrors the lower half
/// scaled by q^{d-i}, so h^{2d-i} = h^i tensor L^{d-i} and the dual of the
/// whole object is itself twisted by L^{-d}.
inline FrobObj random_poincare_obj(std::mt19937_64& rng, int d, const Rat& q, int max_blocks = 2) {
    std::uniform_int_distribution<int> blocks_pick(1, max_blocks);
    std::map<int, RatMat> pieces;
    RatMat unit(1, 1);
    unit.at(0, 0) = Rat(1);
    pieces.emplace(0, unit);
    for (int i = 1; i < d; ++i) pieces.emplace(i, random_palindromic_piece(rng, i, q, blocks_pick(rng)));
    pieces.emplace(d, random_palindromic_piece(rng, d, q, blocks_pick(rng)));
    for (int i = 0; i < d; ++i) {
        const RatMat& low = pieces.at(i);
        pieces.emplace(2 * d - i, q.pow(d - i) * low);
    }
    return frob_generic(pieces);
}

} // namespace mzw::testing

#endif
