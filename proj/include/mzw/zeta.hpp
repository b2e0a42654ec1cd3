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

#ifndef MZW_ZETA_HPP
#define MZW_ZETA_HPP

#include <optional>
#include <tuple>

#include "mzw/series.hpp"

namespace mzw {

/// Capability contract a backend must provide for the zeta engine: a
/// coefficient ring with exact equality and, per pure-parity part, Euler
/// characteristics, batched super sym/ext classes, classes, duals and the
/// Lefschetz class.
template <class B>
concept LambdaContext = requires(const B& b, const typename B::Part& p, int n) {
    typename B::Coeff;
    typename B::Part;
    { b.chi(p) } -> std::convertible_to<long>;
    { b.sym_classes(p, n) } -> std::same_as<std::vector<typename B::Coeff>>;
    { b.ext_classes(p, n) } -> std::same_as<std::vector<typename B::Coeff>>;
    { b.class_of(p) } -> std::same_as<typename B::Coeff>;
    { b.dual(p) } -> std::same_as<typename B::Part>;
    { b.lefschetz_class() } -> std::same_as<typename B::Coeff>;
};

/// Formal object presented as positive part + negative part; the engine
/// never decomposes objects itself, callers hand it the split.
template <class P>
struct SignedObject {
    P plus;  // positive (even) part; may be empty
    P minus; // negative (odd) part; may be empty
};

template <class C>
struct FuncEqReport {
    bool holds = false;
    int order_checked = 0;
    /// (exponent, lhs coefficient, rhs coefficient) of the first mismatch.
    std::optional<std::tuple<int, C, C>> first_mismatch;
    long chi = 0;
    long chi_plus = 0;
    long chi_minus = 0;
    C det = C::zero();
};

/// The simplified form with (-T)^chi in place of (-1)^{chi+} T^chi; it is a
/// theorem only when chi^- is even, so the engine reports applicability.
template <class C>
struct SignedFormReport {
    bool applicable = false; // chi^- even
    FuncEqReport<C> report;
};

template <LambdaContext B>
long default_order(const B& b, const SignedObject<typename B::Part>& m) {
    const long cp = b.chi(m.plus);
    const long cm = b.chi(m.minus);
    return 2 * (cp + (cm < 0 ? -cm : cm)) + 8;
}

/// x^e in the coefficient ring; negative e needs a unit.
template <RingWithUnits C>
C coeff_pow(const C& x, long e) {
    if (e < 0) {
        std::optional<C> inv = try_invert(x);
        if (!inv) throw Error(ErrorKind::NotInvertible, "negative power of a non-unit coefficient");
        return coeff_pow(*inv, -e);
    }
    C acc = C::one();
    C base = x;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

/// Z(M, T) as a truncated power series: coefficient n is the class of the
/// n-th super symmetric power, assembled multiplicatively from the two parts.
template <LambdaContext B>
Series<typename B::Coeff> zeta_series(const B& b, const SignedObject<typename B::Part>& m, int order) {
    using C = typename B::Coeff;
    const long neg_bound = -b.chi(m.minus);
    const int mmax = static_cast<int>(std::min<long>(order, neg_bound));
    const std::vector<C> sp = b.sym_classes(m.plus, order);
    const std::vector<C> sm = b.sym_classes(m.minus, mmax);
    Series<C> out = Series<C>::zero(order);
    for (int n = 0; n <= order; ++n) {
        C acc = C::zero();
        for (int q = 0; q <= std::min(n, mmax); ++q) acc = acc + sp[static_cast<size_t>(n - q)] * sm[static_cast<size_t>(q)];
        out.at(n) = acc;
    }
    return out;
}

/// Z(M, T) as a rational function: numerator from the symmetric powers of the
/// negative part, denominator from the signed exterior powers of the positive
/// part.
template <LambdaContext B>
RatFun<typename B::Coeff> zeta_rational(const B& b, const SignedObject<typename B::Part>& m) {
    using C = typename B::Coeff;
    const long cp = b.chi(m.plus);
    const long cm = -b.chi(m.minus);
    const std::vector<C> snum = b.sym_classes(m.minus, static_cast<int>(cm));
    const std::vector<C> eden = b.ext_classes(m.plus, static_cast<int>(cp));
    std::vector<C> num(snum.begin(), snum.end());
    std::vector<C> den;
    den.reserve(eden.size());
    for (size_t n = 0; n < eden.size(); ++n) den.push_back(n % 2 == 0 ? eden[n] : -eden[n]);
    return RatFun<C>{Poly<C>(std::move(num)), Poly<C>(std::move(den))};
}

/// det(M) = Lambda^{chi+}(M+) tensor S^{-chi-}(M-)^{-1} in the coefficient
/// ring.
template <LambdaContext B>
typename B::Coeff det_class(const B& b, const SignedObject<typename B::Part>& m) {
    using C = typename B::Coeff;
    const long cp = b.chi(m.plus);
    const long cm = -b.chi(m.minus);
    const C top_plus = b.ext_classes(m.plus, static_cast<int>(cp)).back();
    const C top_minus = b.sym_classes(m.minus, static_cast<int>(cm)).back();
    std::optional<C> inv = try_invert(top_minus);
    if (!inv)
        throw Error(ErrorKind::NotInvertibleClass, "top symmetric power of the negative part is not a unit");
    return top_plus * (*inv);
}

/// Laurent expansion of f(1/T) on exponents <= hi, where f = num/den has a
/// unit leading denominator coefficient.
template <RingWithUnits C>
LaurentSeries<C> expand_at_inverse(const RatFun<C>& f, int hi) {
    const int a = f.num.degree();
    const int bdeg = f.den.degree();
    const int offset = bdeg - a;
    const int len = hi - offset + 1;
    if (len <= 0) return LaurentSeries<C>(offset, {C::zero()});
    const Series<C> inv = series_inverse(Series<C>::from_poly(f.den.reversed(), len - 1), len - 1);
    const Series<C> prod = Series<C>::from_poly(f.num.reversed(), len - 1) * inv;
    return LaurentSeries<C>(offset, prod.coeffs());
}

namespace detail {

template <class C>
FuncEqReport<C> compare_windows(const LaurentSeries<C>& lhs, const LaurentSeries<C>& rhs, int order) {
    FuncEqReport<C> rep;
    rep.order_checked = order;
    rep.holds = true;
    for (int e = -order; e <= order; ++e) {
        const C& l = lhs.coeff(e);
        const C& r = rhs.coeff(e);
        if (!(l == r)) {
            rep.holds = false;
            rep.first_mismatch = std::make_tuple(e, l, r);
            break;
        }
    }
    return rep;
}

} // namespace detail

/// Checks Z(M*, 1/T) = (-1)^{chi+} det(M) T^{chi} Z(M, T) coefficientwise as
/// Laurent series on the window [-order, order].
template <LambdaContext B>
FuncEqReport<typename B::Coeff> funceq_check(const B& b, const SignedObject<typename B::Part>& m, int order) {
    using C = typename B::Coeff;
    const long cp = b.chi(m.plus);
    const long cm = b.chi(m.minus);
    const long chi = cp + cm;

    SignedObject<typename B::Part> md{b.dual(m.plus), b.dual(m.minus)};
    const LaurentSeries<C> lhs = expand_at_inverse(zeta_rational(b, md), order);

    const C det = det_class(b, m);
    const int rhs_len = std::max<long>(0, order - chi) + 1;
    const Series<C> zs = ratfun_expand(zeta_rational(b, m), static_cast<int>(rhs_len) - 1);
    C factor = det;
    if (cp % 2 != 0) factor = -factor;
    std::vector<C> rhs_coeffs;
    rhs_coeffs.reserve(static_cast<size_t>(rhs_len));
    for (int n = 0; n < rhs_len; ++n) rhs_coeffs.push_back(factor * zs[n]);
    const LaurentSeries<C> rhs(static_cast<int>(chi), std::move(rhs_coeffs));

    FuncEqReport<C> rep = detail::compare_windows(lhs, rhs, order);
    rep.chi = chi;
    rep.chi_plus = cp;
    rep.chi_minus = cm;
    rep.det = det;
    return rep;
}

/// The simplified signed form Z(M*, 1/T) = det(M) (-T)^{chi} Z(M, T).
/// Valid only when chi^- is even; the report still evaluates the identity so
/// callers can observe the sign failure on odd chi^-.
template <LambdaContext B>
SignedFormReport<typename B::Coeff> funceq_check_signed_form(const B& b, const SignedObject<typename B::Part>& m,
                                                             int order) {
    using C = typename B::Coeff;
    const long cp = b.chi(m.plus);
    const long cm = b.chi(m.minus);
    const long chi = cp + cm;

    SignedObject<typename B::Part> md{b.dual(m.plus), b.dual(m.minus)};
    const LaurentSeries<C> lhs = expand_at_inverse(zeta_rational(b, md), order);

    const C det = det_class(b, m);
    const int rhs_len = std::max<long>(0, order - chi) + 1;
    const Series<C> zs = ratfun_expand(zeta_rational(b, m), static_cast<int>(rhs_len) - 1);
    C factor = det;
    if (chi % 2 != 0) factor = -factor; // (-T)^chi instead of (-1)^{chi+} T^chi
    std::vector<C> rhs_coeffs;
    rhs_coeffs.reserve(static_cast<size_t>(rhs_len));
    for (int n = 0; n < rhs_len; ++n) rhs_coeffs.push_back(factor * zs[n]);
    const LaurentSeries<C> rhs(static_cast<int>(chi), std::move(rhs_coeffs));

    SignedFormReport<C> out;
    out.applicable = (cm % 2) == 0;
    out.report = detail::compare_windows(lhs, rhs, order);
    out.report.chi = chi;
    out.report.chi_plus = cp;
    out.report.chi_minus = cm;
    out.report.det = det;
    return out;
}

/// Self-dual form for objects with class(M*) = class(M) * [L]^{-d}:
/// Z(M, 1/T) = (-T)^{chi} det(M) [L]^{-d chi} Z(M, [L]^{-d} T).
/// The twist [L]^{-d chi} makes the factor equal to det(M)^{-1}; without it
/// the printed det(M) form fails already for the projective plane.
/// Throws Error(NotSelfDual) when the duality hypothesis fails.
template <LambdaContext B>
FuncEqReport<typename B::Coeff> funceq_check_selfdual(const B& b, const SignedObject<typename B::Part>& m, int d,
                                                      int order) {
    using C = typename B::Coeff;
    const long cp = b.chi(m.plus);
    const long cm = b.chi(m.minus);
    const long chi = cp + cm;

    const C lef = b.lefschetz_class();
    const C twist = coeff_pow(lef, -static_cast<long>(d));
    const C class_m = b.class_of(m.plus) + b.class_of(m.minus);
    const C class_dual = b.class_of(b.dual(m.plus)) + b.class_of(b.dual(m.minus));
    if (!(class_dual == class_m * twist))
        throw Error(ErrorKind::NotSelfDual,
                    "class of the dual is not class(M) * [L]^{-" + std::to_string(d) + "}");

    const RatFun<C> zr = zeta_rational(b, m);
    const LaurentSeries<C> lhs = expand_at_inverse(zr, order);

    const RatFun<C> zr_twisted{zr.num.var_scale(twist), zr.den.var_scale(twist)};
    const int rhs_len = std::max<long>(0, order - chi) + 1;
    const Series<C> zs = ratfun_expand(zr_twisted, static_cast<int>(rhs_len) - 1);
    const C det = det_class(b, m);
    C factor = det * coeff_pow(lef, -static_cast<long>(d) * chi);
    if (chi % 2 != 0) factor = -factor;
    std::vector<C> rhs_coeffs;
    rhs_coeffs.reserve(static_cast<size_t>(rhs_len));
    for (int n = 0; n < rhs_len; ++n) rhs_coeffs.push_back(factor * zs[n]);
    const LaurentSeries<C> rhs(static_cast<int>(chi), std::move(rhs_coeffs));

    FuncEqReport<C> rep = detail::compare_windows(lhs, rhs, order);
    rep.chi = chi;
    rep.chi_plus = cp;
    rep.chi_minus = cm;
    rep.det = det;
    return rep;
}

/// Both parts within their declared vanishing bounds: Lambda^{chi+ +1} of the
/// positive part and S^{-chi- +1} of the negative part are zero classes, and
/// the top powers are units.
template <LambdaContext B>
bool verify_signed_bounds(const B& b, const SignedObject<typename B::Part>& m) {
    using C = typename B::Coeff;
    const long cp = b.chi(m.plus);
    const long cm = -b.chi(m.minus);
    if (cp < 0 || cm < 0) return false;
    const std::vector<C> ext = b.ext_classes(m.plus, static_cast<int>(cp) + 1);
    if (!ext.back().is_zero()) return false;
    if (!try_invert(ext[static_cast<size_t>(cp)])) return false;
    const std::vector<C> sym = b.sym_classes(m.minus, static_cast<int>(cm) + 1);
    if (!sym.back().is_zero()) return false;
    if (!try_invert(sym[static_cast<size_t>(cm)])) return false;
    return true;
}

} // namespace mzw

#endif
