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

#ifndef MZW_SYMFUNC_HPP
#define MZW_SYMFUNC_HPP

#include <memory>
#include <vector>

#include "mzw/poly.hpp"

namespace mzw {

/// values[k] is p_{k+1} of a (virtual) root multiset: the Adams-operation
/// values of a K0 class. Entries live in any commutative Q-algebra.
template <class R>
using PowerSumSeq = std::vector<R>;

/// One partition term of the expansion of e_n or h_n on the power-sum basis:
/// e_n = sum_lambda eps_lambda/z_lambda p_lambda, h_n = sum 1/z_lambda p_lambda.
struct PBasisTerm {
    std::vector<int> parts; // partition of n, weakly decreasing
    Rat e_coeff;            // eps_lambda / z_lambda
    Rat h_coeff;            // 1 / z_lambda
};

/// The expansion table for a fixed n. Object-independent, memoized per n,
/// thread-safe (concurrent fills may race but are idempotent).
const std::shared_ptr<const std::vector<PBasisTerm>>& p_basis_expansion(int n);

namespace detail {
template <class R>
void require_entries(const PowerSumSeq<R>& p, int needed, const char* op) {
    if (static_cast<int>(p.size()) < needed)
        throw Error(ErrorKind::InsufficientData, std::string(op) + ": need " + std::to_string(needed) +
                                                     " power sums, have " + std::to_string(p.size()));
}
} // namespace detail

/// Power sums of the product multiset: p_k is multiplicative over tensor
/// products of root multisets.
template <Ring R>
PowerSumSeq<R> ps_product(const PowerSumSeq<R>& a, const PowerSumSeq<R>& b, int count) {
    detail::require_entries(a, count, "ps_product");
    detail::require_entries(b, count, "ps_product");
    PowerSumSeq<R> out;
    out.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) out.push_back(a[static_cast<size_t>(k)] * b[static_cast<size_t>(k)]);
    return out;
}

/// Power sums of the multiset of products over n-element sub-multisets
/// (exterior power at root level): plethysm p_k o e_n, i.e.
/// result[k-1] = e_n evaluated at the k-th Adams roots p_j -> p[jk-1].
template <QAlgebra R>
PowerSumSeq<R> ps_exterior(const PowerSumSeq<R>& p, int n, int count) {
    if (n == 0) return PowerSumSeq<R>(static_cast<size_t>(count), R::one());
    detail::require_entries(p, n * count, "ps_exterior");
    const auto& terms = *p_basis_expansion(n);
    PowerSumSeq<R> out;
    out.reserve(static_cast<size_t>(count));
    for (int k = 1; k <= count; ++k) {
        R acc = R::zero();
        for (const PBasisTerm& t : terms) {
            R prod = R(t.e_coeff);
            for (int j : t.parts) prod = prod * p[static_cast<size_t>(j * k - 1)];
            acc = acc + prod;
        }
        out.push_back(acc);
    }
    return out;
}

/// Power sums of products over n-element multisets with repetition
/// (symmetric power at root level): plethysm p_k o h_n.
template <QAlgebra R>
PowerSumSeq<R> ps_symmetric(const PowerSumSeq<R>& p, int n, int count) {
    if (n == 0) return PowerSumSeq<R>(static_cast<size_t>(count), R::one());
    detail::require_entries(p, n * count, "ps_symmetric");
    const auto& terms = *p_basis_expansion(n);
    PowerSumSeq<R> out;
    out.reserve(static_cast<size_t>(count));
    for (int k = 1; k <= count; ++k) {
        R acc = R::zero();
        for (const PBasisTerm& t : terms) {
            R prod = R(t.h_coeff);
            for (int j : t.parts) prod = prod * p[static_cast<size_t>(j * k - 1)];
            acc = acc + prod;
        }
        out.push_back(acc);
    }
    return out;
}

/// Batch form: power sums of all exterior powers n = 0..nmax at once, via the
/// Newton recursion per Adams index instead of partition tables. Same
/// contract as calling ps_exterior for each n; this is the hot path used by
/// the matrix backend when whole zeta series are assembled.
template <QAlgebra R>
std::vector<PowerSumSeq<R>> ps_exterior_all(const PowerSumSeq<R>& p, int nmax, int count) {
    detail::require_entries(p, nmax * count, "ps_exterior_all");
    std::vector<PowerSumSeq<R>> out(static_cast<size_t>(nmax) + 1,
                                    PowerSumSeq<R>(static_cast<size_t>(count)));
    for (int k = 1; k <= count; ++k) {
        std::vector<R> e(static_cast<size_t>(nmax) + 1, R::zero());
        e[0] = R::one();
        for (int m = 1; m <= nmax; ++m) {
            R acc = R::zero();
            for (int j = 1; j <= m; ++j) {
                const R term = p[static_cast<size_t>(j * k - 1)] * e[static_cast<size_t>(m - j)];
                acc = (j % 2 == 1) ? acc + term : acc - term;
            }
            e[static_cast<size_t>(m)] = R(Rat(1, m)) * acc;
        }
        for (int m = 0; m <= nmax; ++m) out[static_cast<size_t>(m)][static_cast<size_t>(k - 1)] = e[static_cast<size_t>(m)];
    }
    return out;
}

/// Batch form of ps_symmetric; see ps_exterior_all.
template <QAlgebra R>
std::vector<PowerSumSeq<R>> ps_symmetric_all(const PowerSumSeq<R>& p, int nmax, int count) {
    detail::require_entries(p, nmax * count, "ps_symmetric_all");
    std::vector<PowerSumSeq<R>> out(static_cast<size_t>(nmax) + 1,
                                    PowerSumSeq<R>(static_cast<size_t>(count)));
    for (int k = 1; k <= count; ++k) {
        std::vector<R> h(static_cast<size_t>(nmax) + 1, R::zero());
        h[0] = R::one();
        for (int m = 1; m <= nmax; ++m) {
            R acc = R::zero();
            for (int j = 1; j <= m; ++j)
                acc = acc + p[static_cast<size_t>(j * k - 1)] * h[static_cast<size_t>(m - j)];
            h[static_cast<size_t>(m)] = R(Rat(1, m)) * acc;
        }
        for (int m = 0; m <= nmax; ++m) out[static_cast<size_t>(m)][static_cast<size_t>(k - 1)] = h[static_cast<size_t>(m)];
    }
    return out;
}

} // namespace mzw

#endif
