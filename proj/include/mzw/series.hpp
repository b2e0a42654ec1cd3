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

#ifndef MZW_SERIES_HPP
#define MZW_SERIES_HPP

#include <optional>
#include <vector>

#include "mzw/poly.hpp"

namespace mzw {

/// Truncated power series: coefficients 0..order, all retained (length is
/// exactly order+1 even when trailing entries vanish).
template <Ring R>
class Series {
  public:
    Series() : c_(1, R::zero()) {}
    Series(std::vector<R> cs) : c_(std::move(cs)) {
        if (c_.empty()) c_.assign(1, R::zero());
    }
    static Series zero(int order) { return Series(std::vector<R>(static_cast<size_t>(order) + 1, R::zero())); }
    static Series one(int order) {
        Series s = zero(order);
        s.c_[0] = R::one();
        return s;
    }
    static Series from_poly(const Poly<R>& p, int order) {
        Series s = zero(order);
        for (int i = 0; i <= std::min(order, p.degree()); ++i) s.c_[static_cast<size_t>(i)] = p[i];
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const R& operator[](int i) const {
        static const R z = R::zero();
        if (i < 0 || i > order()) return z;
        return c_[static_cast<size_t>(i)];
    }
    R& at(int i) { return c_[static_cast<size_t>(i)]; }
    const std::vector<R>& coeffs() const { return c_; }

    Series truncated(int order) const {
        std::vector<R> v(static_cast<size_t>(order) + 1, R::zero());
        for (int i = 0; i <= std::min(order, this->order()); ++i) v[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
        return Series(std::move(v));
    }

    friend Series operator+(const Series& a, const Series& b) {
        const int n = std::min(a.order(), b.order());
        std::vector<R> v(static_cast<size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) v[static_cast<size_t>(i)] = a[i] + b[i];
        return Series(std::move(v));
    }
    friend Series operator-(const Series& a, const Series& b) {
        const int n = std::min(a.order(), b.order());
        std::vector<R> v(static_cast<size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) v[static_cast<size_t>(i)] = a[i] - b[i];
        return Series(std::move(v));
    }
    friend Series operator*(const Series& a, const Series& b) {
        const int n = std::min(a.order(), b.order());
        std::vector<R> v(static_cast<size_t>(n) + 1, R::zero());
        for (int i = 0; i <= n; ++i) {
            if (a[i].is_zero()) continue;
            for (int j = 0; i + j <= n; ++j) {
                if (b[j].is_zero()) continue;
                ring_acc(v[static_cast<size_t>(i + j)], a[i] * b[j]);
            }
        }
        return Series(std::move(v));
    }
    friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

  private:
    std::vector<R> c_;
};

/// Multiplicative inverse of s up to the given order. The constant term must
/// be a unit of R; otherwise Error(NotInvertible).
template <RingWithUnits R>
Series<R> series_inverse(const Series<R>& s, int order) {
    std::optional<R> inv0 = try_invert(s[0]);
    if (!inv0) throw Error(ErrorKind::NotInvertible, "series constant term is not a unit");
    Series<R> out = Series<R>::zero(order);
    out.at(0) = *inv0;
    for (int n = 1; n <= order; ++n) {
        R acc = R::zero();
        for (int i = 1; i <= n; ++i) {
            if (s[i].is_zero()) continue;
            ring_acc(acc, s[i] * out[n - i]);
        }
        out.at(n) = -(*inv0 * acc);
    }
    return out;
}

/// Expansion of num/den up to `order` (den(0) must be a unit).
template <RingWithUnits R>
Series<R> ratfun_expand(const RatFun<R>& f, int order) {
    Series<R> den = Series<R>::from_poly(f.den, order);
    return Series<R>::from_poly(f.num, order) * series_inverse(den, order);
}

/// Laurent series on a finite exponent window. Exponents below `offset` are
/// exact zeros; exponents above offset+len-1 were not computed.
template <Ring R>
class LaurentSeries {
  public:
    LaurentSeries() : offset_(0), c_(1, R::zero()) {}
    LaurentSeries(int offset, std::vector<R> cs) : offset_(offset), c_(std::move(cs)) {
        if (c_.empty()) c_.assign(1, R::zero());
        // canonical: the coefficient at the offset is nonzero unless the
        // whole window vanishes
        while (c_.size() > 1 && c_.front().is_zero()) {
            c_.erase(c_.begin());
            ++offset_;
        }
    }
    static LaurentSeries from_series(const Series<R>& s, int shift) {
        return LaurentSeries(shift, s.coeffs());
    }

    int offset() const { return offset_; }
    int top() const { return offset_ + static_cast<int>(c_.size()) - 1; }
    /// Coefficient of T^e; exponents below the offset are exact zeros, and
    /// exponents above top() were never computed.
    const R& coeff(int e) const {
        static const R z = R::zero();
        if (e < offset_) return z;
        if (e > top()) throw Error(ErrorKind::BackendError, "Laurent coefficient beyond the computed window");
        return c_[static_cast<size_t>(e - offset_)];
    }

    /// Lowest exponent with nonzero coefficient within the window, if any.
    std::optional<int> lowest_nonzero() const {
        for (int e = offset_; e <= top(); ++e)
            if (!coeff(e).is_zero()) return e;
        return std::nullopt;
    }

  private:
    int offset_;
    std::vector<R> c_;
};

} // namespace mzw

#endif
