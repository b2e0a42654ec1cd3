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

#ifndef MZW_K0CLASS_HPP
#define MZW_K0CLASS_HPP

#include <map>
#include <optional>
#include <string>

#include "mzw/poly.hpp"

namespace mzw {

/// Canonical K0 class of a graded object: one reduced fraction of reversed
/// characteristic polynomials per degree (num(0) = den(0) = 1, coprime).
/// The additive group per degree is multiplicative on fractions: direct sums
/// multiply characteristic polynomials, virtual classes divide them. Ring
/// multiplication convolves degrees with root-product polynomials, exactly.
class K0Class {
  public:
    using Piece = RatFun<Rat>;

    K0Class() = default;

    static K0Class zero() { return K0Class(); }
    static K0Class one() { return from_polynomial_piece(0, Poly<Rat>{Rat(1), Rat(-1)}); }
    /// Class with a single honest piece p (p(0) = 1) at the given degree.
    static K0Class from_polynomial_piece(int degree, Poly<Rat> p);
    /// Class with an arbitrary fraction piece; reduced on entry.
    static K0Class from_piece(int degree, const Poly<Rat>& num, const Poly<Rat>& den);
    /// n * [1] (degree 0, (1-T)^n); n may be negative.
    static K0Class from_int(long n);

    bool is_zero() const { return parts_.empty(); }
    const std::map<int, Piece>& parts() const { return parts_; }

    /// deg num - deg den at a degree: the virtual dimension there.
    int virtual_dim(int degree) const;
    /// Total virtual dimension (chi of the underlying virtual object is the
    /// alternating-sign version; this is the plain per-degree sum).
    long total_virtual_dim() const;

    friend K0Class operator+(const K0Class& a, const K0Class& b);
    friend K0Class operator-(const K0Class& a, const K0Class& b);
    friend K0Class operator*(const K0Class& a, const K0Class& b);
    K0Class& operator+=(const K0Class& o);
    K0Class operator-() const;

    friend bool operator==(const K0Class& a, const K0Class& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const K0Class& a, const K0Class& b) { return !(a.parts_ == b.parts_); }

    /// Raise to an integer power (inverts via try_invert for negative e).
    K0Class pow(long e) const;

    std::string str() const;

  private:
    void set_piece(int degree, Piece piece);
    std::map<int, Piece> parts_; // no trivial (1/1) pieces stored
};

/// Inverse of +-(an invertible class): single degree, single linear factor in
/// the numerator (class of an invertible object) or in the denominator (its
/// negation). Anything else has no inverse in the class ring.
std::optional<K0Class> try_invert(const K0Class& c);

/// Reduce num/den exactly: first tries the Newton round-trip at the virtual
/// dimension (cheap, no gcd), then falls back to a polynomial gcd.
RatFun<Rat> reduce_reversed_pair(const Poly<Rat>& num, const Poly<Rat>& den);

/// Polynomial whose roots are all products a*b of roots of f and g
/// (constant terms 1). The empty multiset gives 1.
Poly<Rat> composed_product(const Poly<Rat>& f, const Poly<Rat>& g);

/// Power sums p_1..p_count of the virtual root multiset of a piece.
std::vector<Rat> piece_power_sums(const K0Class::Piece& piece, int count);

/// Product of the virtual roots of a piece (num roots over den roots).
Rat piece_root_product(const K0Class::Piece& piece);

struct DetData {
    int weight = 0; // sum over degrees of (-1)^w * w * dim_w
    Rat delta{1};   // product of even-degree roots over odd-degree roots
};

/// Determinant data of the (virtual) object with this class; the determinant
/// class itself is the single linear factor 1 - delta*T placed at `weight`.
DetData det_data_of_class(const K0Class& c);
K0Class det_class_of(const K0Class& c);

/// Weight of an invertible class (single degree, single linear numerator
/// factor, trivial denominator) plus the odd-weight diagnostic flag.
/// Throws Error(NotInvertibleClass) otherwise.
struct WeightInfo {
    int weight = 0;
    bool odd = false;
    Rat delta{1};
};
WeightInfo weight_of_invertible(const K0Class& c);

} // namespace mzw

#endif
