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

#include "mzw/poly.hpp"

namespace mzw {

namespace {

// Quotient/remainder over the field Q.
std::pair<Poly<Rat>, Poly<Rat>> poly_divmod(const Poly<Rat>& a, const Poly<Rat>& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    std::vector<Rat> rem(a.coeffs());
    const int db = b.degree();
    const Rat lead_inv = Rat(1) / b[db];
    std::vector<Rat> quo;
    if (static_cast<int>(rem.size()) - 1 >= db)
        quo.assign(rem.size() - static_cast<size_t>(db), Rat(0));
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
        Rat q = rem[static_cast<size_t>(i)] * lead_inv;
        if (q.is_zero()) continue;
        quo[static_cast<size_t>(i - db)] = q;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<size_t>(i - db + j)] -= q * b[j];
    }
    return {Poly<Rat>(std::move(quo)), Poly<Rat>(std::move(rem))};
}

} // namespace

Poly<Rat> poly_rem(const Poly<Rat>& a, const Poly<Rat>& b) { return poly_divmod(a, b).second; }

Poly<Rat> poly_divexact(const Poly<Rat>& a, const Poly<Rat>& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw Error(ErrorKind::DivisionByZero, "inexact polynomial division");
    return q;
}

Poly<Rat> poly_gcd(Poly<Rat> a, Poly<Rat> b) {
    while (!b.is_zero()) {
        Poly<Rat> r = poly_rem(a, b);
        // Normalizing each remainder to monic keeps coefficient growth in check.
        if (!r.is_zero()) r = (Rat(1) / r[r.degree()]) * r;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    if (!a[0].is_zero()) return (Rat(1) / a[0]) * a;
    return (Rat(1) / a[a.degree()]) * a;
}

RatFun<Rat> ratfun_normalize(const Poly<Rat>& num, const Poly<Rat>& den) {
    if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
    if (num.is_zero()) return RatFun<Rat>{Poly<Rat>::zero(), Poly<Rat>::one()};
    Poly<Rat> n = num, d = den;
    Poly<Rat> g = poly_gcd(n, d);
    if (g.degree() > 0) {
        n = poly_divexact(n, g);
        d = poly_divexact(d, g);
    }
    const Rat unit = d[0].is_zero() ? d[d.degree()] : d[0];
    const Rat inv = Rat(1) / unit;
    return RatFun<Rat>{inv * n, inv * d};
}

} // namespace mzw
