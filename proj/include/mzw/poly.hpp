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

#ifndef MZW_POLY_HPP
#define MZW_POLY_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "mzw/errors.hpp"
#include "mzw/ring.hpp"

namespace mzw {

/// Dense univariate polynomial over a commutative ring R, index = degree.
/// Invariant: the highest stored coefficient is nonzero (zero poly is empty).
template <Ring R>
class Poly {
  public:
    Poly() = default;
    Poly(std::initializer_list<R> cs) : c_(cs) { trim(); }
    explicit Poly(std::vector<R> cs) : c_(std::move(cs)) { trim(); }
    explicit Poly(const R& c) : c_{c} { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(R::one()); }
    /// c * T^k
    static Poly monomial(const R& c, int k) {
        std::vector<R> v(static_cast<size_t>(k) + 1, R::zero());
        v.back() = c;
        return Poly(std::move(v));
    }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == R::one(); }

    /// Coefficient of T^i (zero outside the stored range).
    const R& operator[](int i) const {
        static const R z = R::zero();
        if (i < 0 || i >= static_cast<int>(c_.size())) return z;
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<R>& coeffs() const { return c_; }

    R eval(const R& x) const {
        R acc = R::zero();
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<R> v(std::max(a.c_.size(), b.c_.size()), R::zero());
        for (size_t i = 0; i < v.size(); ++i) v[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<R> v(std::max(a.c_.size(), b.c_.size()), R::zero());
        for (size_t i = 0; i < v.size(); ++i) v[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
        return Poly(std::move(v));
    }
    Poly operator-() const {
        std::vector<R> v;
        v.reserve(c_.size());
        for (const R& x : c_) v.push_back(-x);
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> v(a.c_.size() + b.c_.size() - 1, R::zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) ring_acc(v[i + j], a.c_[i] * b.c_[j]);
        }
        return Poly(std::move(v));
    }
    friend Poly operator*(const R& s, const Poly& p) {
        std::vector<R> v;
        v.reserve(p.c_.size());
        for (const R& x : p.c_) v.push_back(s * x);
        return Poly(std::move(v));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a.c_ == b.c_); }

    /// Coefficient reversal at the polynomial's own degree: T^deg * p(1/T).
    Poly reversed() const {
        std::vector<R> v(c_.rbegin(), c_.rend());
        return Poly(std::move(v));
    }

    /// p(uT): coefficient i is scaled by u^i.
    Poly var_scale(const R& u) const {
        std::vector<R> v = c_;
        R uk = R::one();
        for (size_t i = 1; i < v.size(); ++i) {
            uk = uk * u;
            v[i] = v[i] * uk;
        }
        return Poly(std::move(v));
    }

    Poly derivative() const requires QAlgebra<R> {
        if (c_.size() <= 1) return Poly();
        std::vector<R> v;
        v.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) v.push_back(R(Rat(static_cast<long>(i))) * c_[i]);
        return Poly(std::move(v));
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<R> c_;
};

/// Quotient of two polynomials. Over Q it is kept coprime with den(0) = 1
/// whenever den(0) != 0 (see ratfun_normalize); over other rings it is a
/// plain pair.
template <Ring R>
struct RatFun {
    Poly<R> num;
    Poly<R> den{Poly<R>::one()};

    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num == b.num && a.den == b.den; }
};

// --- Newton identity conversions ----------------------------------------

/// n * x by binary doubling; keeps plain rings free of scalar structure.
template <Ring R>
R ring_smul(long n, const R& x) {
    if (n == 0 || x.is_zero()) return R::zero();
    bool neg = n < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    R acc = R::zero();
    R base = x;
    while (k) {
        if (k & 1) acc = acc + base;
        k >>= 1;
        if (k) base = base + base;
    }
    return neg ? -acc : acc;
}

/// Power sums of the root multiset of p = prod (1 - a_i T), computed by the
/// Newton recursion from the coefficients. result[k] = sum a_i^{k+1} for
/// k = 0..count-1. Requires p(0) = 1; no ring division is used.
template <Ring R>
std::vector<R> power_sums_from_poly(const Poly<R>& p, int count) {
    if (p.is_zero() || !(p[0] == R::one()))
        throw Error(ErrorKind::NotReversedMonic, "power_sums_from_poly needs constant term 1");
    // p = sum (-1)^i e_i T^i
    const int d = p.degree();
    std::vector<R> e(static_cast<size_t>(d) + 1, R::zero());
    for (int i = 0; i <= d; ++i) e[static_cast<size_t>(i)] = (i % 2 == 0) ? p[i] : -p[i];
    std::vector<R> ps;
    ps.reserve(static_cast<size_t>(std::max(count, 0)));
    for (int k = 1; k <= count; ++k) {
        R acc = R::zero();
        for (int i = 1; i < k && i <= d; ++i) {
            const R term = e[static_cast<size_t>(i)] * ps[static_cast<size_t>(k - i - 1)];
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        if (k <= d) {
            const R top = ring_smul(k, e[static_cast<size_t>(k)]);
            acc = (k % 2 == 1) ? acc + top : acc - top;
        }
        ps.push_back(acc);
    }
    return ps;
}

/// Inverse Newton: reconstructs prod (1 - a_i T) of degree <= `degree` from
/// the power sums p_1..p_degree. Needs division by integers, hence a
/// Q-algebra.
template <QAlgebra R>
Poly<R> poly_from_power_sums(const std::vector<R>& psums, int degree) {
    if (static_cast<int>(psums.size()) < degree)
        throw Error(ErrorKind::InsufficientData, "poly_from_power_sums: need " + std::to_string(degree) +
                                                     " power sums, have " + std::to_string(psums.size()));
    std::vector<R> e(static_cast<size_t>(degree) + 1, R::zero());
    e[0] = R::one();
    for (int k = 1; k <= degree; ++k) {
        R acc = R::zero();
        for (int i = 1; i <= k; ++i) {
            const R term = psums[static_cast<size_t>(i - 1)] * e[static_cast<size_t>(k - i)];
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        e[static_cast<size_t>(k)] = R(Rat(1, k)) * acc;
    }
    std::vector<R> coeffs(static_cast<size_t>(degree) + 1, R::zero());
    for (int i = 0; i <= degree; ++i)
        coeffs[static_cast<size_t>(i)] = (i % 2 == 0) ? e[static_cast<size_t>(i)] : -e[static_cast<size_t>(i)];
    return Poly<R>(std::move(coeffs));
}

// --- Euclidean structure over Q ------------------------------------------

/// Remainder of a by b over a field.
Poly<Rat> poly_rem(const Poly<Rat>& a, const Poly<Rat>& b);

/// Exact quotient; throws if the division is not exact.
Poly<Rat> poly_divexact(const Poly<Rat>& a, const Poly<Rat>& b);

/// Monic gcd, rescaled so that gcd(0) = 1 when possible.
Poly<Rat> poly_gcd(Poly<Rat> a, Poly<Rat> b);

/// Canonical form of num/den over Q: coprime, and den(0) = 1 when den(0) != 0
/// (otherwise den is made monic). Throws Error(DivisionByZero) if den = 0.
RatFun<Rat> ratfun_normalize(const Poly<Rat>& num, const Poly<Rat>& den);

} // namespace mzw

#endif
