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

#ifndef MZW_RING_HPP
#define MZW_RING_HPP

#include <concepts>
#include <optional>

#include "mzw/rat.hpp"

namespace mzw {

/// Commutative ring with exact equality. Zero and one are named rather than
/// implicit so that class rings with nontrivial representations qualify.
template <class R>
concept Ring = std::copyable<R> && requires(const R& a, const R& b) {
    { R::zero() } -> std::convertible_to<R>;
    { R::one() } -> std::convertible_to<R>;
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
};

/// Ring containing Q: scalar multiplication by exact rationals is available.
/// Newton recursion in the power-sum direction needs division by integers.
template <class R>
concept QAlgebra = Ring<R> && requires(const R& a, const Rat& c) {
    { R(c) } -> std::convertible_to<R>;
};

/// Units are discovered via ADL: each coefficient ring provides
/// try_invert(x) -> std::optional<R>.
template <class R>
concept RingWithUnits = Ring<R> && requires(const R& a) {
    { try_invert(a) } -> std::convertible_to<std::optional<R>>;
};

/// In-place accumulation for hot loops; falls back to x = x + y for rings
/// without operator+=.
template <Ring R>
void ring_acc(R& x, const R& y) {
    if constexpr (requires(R& a, const R& b) { a += b; }) x += y;
    else x = x + y;
}

} // namespace mzw

#endif
