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

#include "mzw/k0class.hpp"

#include <sstream>

#include "mzw/errors.hpp"

namespace mzw {

namespace {

bool piece_is_trivial(const K0Class::Piece& p) { return p.num.is_one() && p.den.is_one(); }

void require_const_one(const Poly<Rat>& p, const char* what) {
    if (p.is_zero() || p[0] != Rat(1))
        throw Error(ErrorKind::NotReversedMonic, std::string(what) + " must have constant term 1");
}

} // namespace

Poly<Rat> composed_product(const Poly<Rat>& f, const Poly<Rat>& g) {
    require_const_one(f, "composed_product factor");
    require_const_one(g, "composed_product factor");
    const int df = f.degree(), dg = g.degree();
    if (df == 0 || dg == 0) return Poly<Rat>::one();
    if (df == 1) {
        const Rat alpha = -f[1];
        return g.var_scale(alpha);
    }
    if (dg == 1) {
        const Rat beta = -g[1];
        return f.var_scale(beta);
    }
    const int d = df * dg;
    const std::vector<Rat> pf = power_sums_from_poly(f, d);
    const std::vector<Rat> pg = power_sums_from_poly(g, d);
    std::vector<Rat> pp(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) pp[static_cast<size_t>(k)] = pf[static_cast<size_t>(k)] * pg[static_cast<size_t>(k)];
    return poly_from_power_sums(pp, d);
}

RatFun<Rat> reduce_reversed_pair(const Poly<Rat>& num, const Poly<Rat>& den) {
    require_const_one(num, "class piece numerator");
    require_const_one(den, "class piece denominator");
    if (den.is_one()) return RatFun<Rat>{num, Poly<Rat>::one()};
    if (num.is_one()) return RatFun<Rat>{Poly<Rat>::one(), den};
    const int delta = num.degree() - den.degree();
    // Honest classes reduce to a plain polynomial of degree exactly delta;
    // reconstruct it from the virtual power sums and verify, avoiding gcds.
    if (delta >= 0) {
        const std::vector<Rat> pn = power_sums_from_poly(num, delta);
        std::vector<Rat> pd = power_sums_from_poly(den, delta);
        for (int k = 0; k < delta; ++k) pd[static_cast<size_t>(k)] = pn[static_cast<size_t>(k)] - pd[static_cast<size_t>(k)];
        Poly<Rat> cand = poly_from_power_sums(pd, delta);
        if (cand * den == num) return RatFun<Rat>{std::move(cand), Poly<Rat>::one()};
    } else {
        const int d2 = -delta;
        const std::vector<Rat> pd = power_sums_from_poly(den, d2);
        std::vector<Rat> pn = power_sums_from_poly(num, d2);
        for (int k = 0; k < d2; ++k) pn[static_cast<size_t>(k)] = pd[static_cast<size_t>(k)] - pn[static_cast<size_t>(k)];
        Poly<Rat> cand = poly_from_power_sums(pn, d2);
        if (cand * num == den) return RatFun<Rat>{Poly<Rat>::one(), std::move(cand)};
    }
    return ratfun_normalize(num, den);
}

K0Class K0Class::from_polynomial_piece(int degree, Poly<Rat> p) {
    require_const_one(p, "class piece");
    K0Class c;
    if (p.degree() > 0) c.parts_.emplace(degree, Piece{std::move(p), Poly<Rat>::one()});
    return c;
}

K0Class K0Class::from_piece(int degree, const Poly<Rat>& num, const Poly<Rat>& den) {
    K0Class c;
    c.set_piece(degree, reduce_reversed_pair(num, den));
    return c;
}

K0Class K0Class::from_int(long n) {
    Poly<Rat> unit{Rat(1), Rat(-1)};
    Poly<Rat> acc = Poly<Rat>::one();
    for (long i = 0; i < (n < 0 ? -n : n); ++i) acc = acc * unit;
    K0Class c;
    if (n > 0) c.set_piece(0, Piece{acc, Poly<Rat>::one()});
    if (n < 0) c.set_piece(0, Piece{Poly<Rat>::one(), acc});
    return c;
}

int K0Class::virtual_dim(int degree) const {
    auto it = parts_.find(degree);
    if (it == parts_.end()) return 0;
    return it->second.num.degree() - it->second.den.degree();
}

long K0Class::total_virtual_dim() const {
    long d = 0;
    for (const auto& [w, piece] : parts_) d += piece.num.degree() - piece.den.degree();
    return d;
}

void K0Class::set_piece(int degree, Piece piece) {
    if (piece_is_trivial(piece)) parts_.erase(degree);
    else parts_[degree] = std::move(piece);
}

K0Class& K0Class::operator+=(const K0Class& o) {
    for (const auto& [w, piece] : o.parts_) {
        auto it = parts_.find(w);
        if (it == parts_.end()) {
            parts_.emplace(w, piece);
        } else {
            set_piece(w, reduce_reversed_pair(it->second.num * piece.num, it->second.den * piece.den));
        }
    }
    return *this;
}

K0Class operator+(const K0Class& a, const K0Class& b) {
    K0Class out = a;
    out += b;
    return out;
}

K0Class K0Class::operator-() const {
    K0Class out;
    for (const auto& [w, piece] : parts_) out.parts_.emplace(w, Piece{piece.den, piece.num});
    return out;
}

K0Class operator-(const K0Class& a, const K0Class& b) { return a + (-b); }

K0Class operator*(const K0Class& a, const K0Class& b) {
    K0Class out;
    for (const auto& [wa, pa] : a.parts_)
        for (const auto& [wb, pb] : b.parts_) {
            // (A+ - A-) x (B+ - B-) split into positive and negative root products.
            Poly<Rat> num = composed_product(pa.num, pb.num) * composed_product(pa.den, pb.den);
            Poly<Rat> den = composed_product(pa.num, pb.den) * composed_product(pa.den, pb.num);
            const int w = wa + wb;
            auto it = out.parts_.find(w);
            if (it != out.parts_.end()) {
                num = num * it->second.num;
                den = den * it->second.den;
            }
            out.set_piece(w, reduce_reversed_pair(num, den));
        }
    return out;
}

K0Class K0Class::pow(long e) const {
    if (e < 0) {
        std::optional<K0Class> inv = try_invert(*this);
        if (!inv) throw Error(ErrorKind::NotInvertibleClass, "negative power of a non-invertible class");
        return inv->pow(-e);
    }
    K0Class acc = K0Class::one();
    K0Class base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

std::optional<K0Class> try_invert(const K0Class& c) {
    if (c.parts().size() != 1) return std::nullopt;
    const auto& [w, piece] = *c.parts().begin();
    if (piece.num.degree() == 1 && piece.den.is_one()) {
        const Rat alpha = -piece.num[1];
        return K0Class::from_polynomial_piece(-w, Poly<Rat>{Rat(1), -(Rat(1) / alpha)});
    }
    if (piece.num.is_one() && piece.den.degree() == 1) {
        const Rat alpha = -piece.den[1];
        return K0Class::from_piece(-w, Poly<Rat>::one(), Poly<Rat>{Rat(1), -(Rat(1) / alpha)});
    }
    return std::nullopt;
}

std::vector<Rat> piece_power_sums(const K0Class::Piece& piece, int count) {
    std::vector<Rat> pn = power_sums_from_poly(piece.num, count);
    const std::vector<Rat> pd = power_sums_from_poly(piece.den, count);
    for (int k = 0; k < count; ++k) pn[static_cast<size_t>(k)] -= pd[static_cast<size_t>(k)];
    return pn;
}

Rat piece_root_product(const K0Class::Piece& piece) {
    const int dn = piece.num.degree(), dd = piece.den.degree();
    Rat top_n = dn >= 0 ? piece.num[dn] : Rat(1);
    Rat top_d = piece.den[dd];
    if (dn % 2 != 0) top_n = -top_n;
    if (dd % 2 != 0) top_d = -top_d;
    return top_n / top_d;
}

DetData det_data_of_class(const K0Class& c) {
    DetData out;
    for (const auto& [w, piece] : c.parts()) {
        const int dim = piece.num.degree() - piece.den.degree();
        const Rat prod = piece_root_product(piece);
        if (w % 2 == 0) {
            out.weight += w * dim;
            out.delta *= prod;
        } else {
            out.weight -= w * dim;
            out.delta /= prod;
        }
    }
    return out;
}

K0Class det_class_of(const K0Class& c) {
    const DetData d = det_data_of_class(c);
    return K0Class::from_polynomial_piece(d.weight, Poly<Rat>{Rat(1), -d.delta});
}

WeightInfo weight_of_invertible(const K0Class& c) {
    if (c.parts().size() != 1)
        throw Error(ErrorKind::NotInvertibleClass, "class is not concentrated in a single degree");
    const auto& [w, piece] = *c.parts().begin();
    if (piece.num.degree() != 1 || !piece.den.is_one())
        throw Error(ErrorKind::NotInvertibleClass, "class piece is not a single linear factor");
    WeightInfo info;
    info.weight = w;
    info.odd = (w % 2) != 0;
    info.delta = -piece.num[1];
    return info;
}

std::string K0Class::str() const {
    if (parts_.empty()) return "0";
    if (*this == one()) return "1";
    std::ostringstream os;
    bool first = true;
    auto poly_str = [](const Poly<Rat>& p) {
        std::ostringstream ps;
        bool f = true;
        for (int i = 0; i <= p.degree(); ++i) {
            if (p[i].is_zero()) continue;
            const Rat c = p[i];
            if (f) {
                if (i == 0) ps << c.str();
                else {
                    if (c == Rat(-1)) ps << "-";
                    else if (c != Rat(1)) ps << c.str() << "*";
                    ps << "T";
                    if (i > 1) ps << "^" << i;
                }
                f = false;
                continue;
            }
            ps << (c.sign() < 0 ? " - " : " + ");
            const Rat a = c.abs();
            if (i == 0) ps << a.str();
            else {
                if (a != Rat(1)) ps << a.str() << "*";
                ps << "T";
                if (i > 1) ps << "^" << i;
            }
        }
        return ps.str();
    };
    for (const auto& [w, piece] : parts_) {
        if (!first) os << "; ";
        first = false;
        os << "deg " << w << ": ";
        if (piece.den.is_one()) os << poly_str(piece.num);
        else if (piece.num.is_one()) os << "-(" << poly_str(piece.den) << ")"; // negated honest piece
        else os << "(" << poly_str(piece.num) << ")/(" << poly_str(piece.den) << ")";
    }
    return os.str();
}

} // namespace mzw
