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

#include "mzw/symbolic.hpp"

#include "mzw/errors.hpp"
#include "mzw/poly.hpp"
#include "mzw/symfunc.hpp"

namespace mzw {

class RootExpr {
  public:
    enum class Kind { Empty, Unit, Atom, Scaled, Sum, Prod, Ext, Sym };
    Kind kind = Kind::Empty;
    std::string atom_name;
    Monomial unit;
    RootPtr a, b;
    int n = 0;
    RegistryPtr reg; // set for Atom nodes
};

namespace {

RootPtr make_node(RootExpr e) { return std::make_shared<const RootExpr>(std::move(e)); }

Monomial monomial_inverse(const Monomial& m) {
    Monomial out;
    for (const auto& [name, e] : m) out.emplace(name, -e);
    return out;
}

Monomial monomial_power(const Monomial& m, long e) {
    Monomial out;
    for (const auto& [name, exp] : m) out.emplace(name, static_cast<int>(exp * e));
    return out;
}

long integer_of(const Rat& r, const char* what) { return r.to_long_checked(what); }

} // namespace

RootPtr root_empty() {
    static const RootPtr node = make_node(RootExpr{});
    return node;
}

RootPtr root_unit() {
    RootExpr e;
    e.kind = RootExpr::Kind::Unit;
    static const RootPtr node = make_node(std::move(e));
    return node;
}

RootPtr root_atom(const RegistryPtr& reg, const std::string& name) {
    reg->get(name); // existence check
    RootExpr e;
    e.kind = RootExpr::Kind::Atom;
    e.atom_name = name;
    e.reg = reg;
    return make_node(std::move(e));
}

RootPtr root_scaled(RootPtr inner, Monomial unit) {
    if (unit.empty()) return inner;
    RootExpr e;
    e.kind = RootExpr::Kind::Scaled;
    e.a = std::move(inner);
    e.unit = std::move(unit);
    return make_node(std::move(e));
}

RootPtr root_sum(RootPtr a, RootPtr b) {
    if (a->kind == RootExpr::Kind::Empty) return b;
    if (b->kind == RootExpr::Kind::Empty) return a;
    RootExpr e;
    e.kind = RootExpr::Kind::Sum;
    e.a = std::move(a);
    e.b = std::move(b);
    return make_node(std::move(e));
}

RootPtr root_prod(RootPtr a, RootPtr b) {
    if (a->kind == RootExpr::Kind::Unit) return b;
    if (b->kind == RootExpr::Kind::Unit) return a;
    RootExpr e;
    e.kind = RootExpr::Kind::Prod;
    e.a = std::move(a);
    e.b = std::move(b);
    return make_node(std::move(e));
}

RootPtr root_ext(RootPtr inner, int n) {
    if (n == 0) return root_unit();
    RootExpr e;
    e.kind = RootExpr::Kind::Ext;
    e.a = std::move(inner);
    e.n = n;
    return make_node(std::move(e));
}

RootPtr root_sym(RootPtr inner, int n) {
    if (n == 0) return root_unit();
    RootExpr e;
    e.kind = RootExpr::Kind::Sym;
    e.a = std::move(inner);
    e.n = n;
    return make_node(std::move(e));
}

long root_dim(const RootPtr& r) {
    switch (r->kind) {
        case RootExpr::Kind::Empty: return 0;
        case RootExpr::Kind::Unit: return 1;
        case RootExpr::Kind::Atom: {
            const AtomDecl& d = r->reg->get(r->atom_name);
            if (d.kind == AtomKind::NegativeGen || d.kind == AtomKind::PositiveGen) return d.dim;
            return 1;
        }
        case RootExpr::Kind::Scaled: return root_dim(r->a);
        case RootExpr::Kind::Sum: return root_dim(r->a) + root_dim(r->b);
        case RootExpr::Kind::Prod: return root_dim(r->a) * root_dim(r->b);
        case RootExpr::Kind::Ext: return integer_of(binomial(root_dim(r->a), r->n), "dimension");
        case RootExpr::Kind::Sym: return integer_of(binomial(root_dim(r->a) + r->n - 1, r->n), "dimension");
    }
    return 0;
}

std::vector<K0Elem> root_power_sums(const RootPtr& r, int count, const RegistryPtr& reg) {
    std::vector<K0Elem> out;
    switch (r->kind) {
        case RootExpr::Kind::Empty:
            out.assign(static_cast<size_t>(count), K0Elem::zero());
            return out;
        case RootExpr::Kind::Unit:
            out.assign(static_cast<size_t>(count), K0Elem::one());
            return out;
        case RootExpr::Kind::Atom: {
            const AtomDecl& d = r->reg->get(r->atom_name);
            if (d.kind == AtomKind::NegativeGen || d.kind == AtomKind::PositiveGen) {
                if (static_cast<int>(d.table.size()) != d.dim + 1)
                    throw Error(ErrorKind::MissingTable, "atom '" + d.name + "' lacks table entries");
                // Table entries are the elementary symmetric functions of the
                // underlying roots; Newton converts them to power sums.
                std::vector<K0Elem> coeffs;
                coeffs.reserve(d.table.size());
                for (size_t i = 0; i < d.table.size(); ++i)
                    coeffs.push_back(i % 2 == 0 ? d.table[i] : -d.table[i]);
                return power_sums_from_poly(Poly<K0Elem>(std::move(coeffs)), count);
            }
            for (int k = 1; k <= count; ++k)
                out.push_back(K0Elem::monomial_elem(r->reg, Monomial{{r->atom_name, k}}, Rat(1)));
            return out;
        }
        case RootExpr::Kind::Scaled: {
            out = root_power_sums(r->a, count, reg);
            for (int k = 1; k <= count; ++k)
                out[static_cast<size_t>(k - 1)] =
                    out[static_cast<size_t>(k - 1)] *
                    K0Elem::monomial_elem(reg, monomial_power(r->unit, k), Rat(1));
            return out;
        }
        case RootExpr::Kind::Sum: {
            out = root_power_sums(r->a, count, reg);
            const std::vector<K0Elem> other = root_power_sums(r->b, count, reg);
            for (int k = 0; k < count; ++k) out[static_cast<size_t>(k)] = out[static_cast<size_t>(k)] + other[static_cast<size_t>(k)];
            return out;
        }
        case RootExpr::Kind::Prod:
            return ps_product(root_power_sums(r->a, count, reg), root_power_sums(r->b, count, reg), count);
        case RootExpr::Kind::Ext:
            return ps_exterior(root_power_sums(r->a, r->n * count, reg), r->n, count);
        case RootExpr::Kind::Sym:
            return ps_symmetric(root_power_sums(r->a, r->n * count, reg), r->n, count);
    }
    return out;
}

K0Elem root_det(const RootPtr& r, const RegistryPtr& reg) {
    switch (r->kind) {
        case RootExpr::Kind::Empty:
        case RootExpr::Kind::Unit:
            return K0Elem::one();
        case RootExpr::Kind::Atom: {
            const AtomDecl& d = r->reg->get(r->atom_name);
            if (d.kind == AtomKind::NegativeGen || d.kind == AtomKind::PositiveGen) return d.table.back();
            return K0Elem::atom(r->reg, r->atom_name);
        }
        case RootExpr::Kind::Scaled:
            return root_det(r->a, reg) *
                   K0Elem::monomial_elem(reg, monomial_power(r->unit, root_dim(r->a)), Rat(1));
        case RootExpr::Kind::Sum:
            return root_det(r->a, reg) * root_det(r->b, reg);
        case RootExpr::Kind::Prod:
            return root_det(r->a, reg).pow(root_dim(r->b)) * root_det(r->b, reg).pow(root_dim(r->a));
        case RootExpr::Kind::Ext: {
            const long d = root_dim(r->a);
            if (d == 0) return K0Elem::one();
            const long e = integer_of(Rat(r->n) * binomial(d, r->n) / Rat(d), "det exponent of an exterior power");
            return root_det(r->a, reg).pow(e);
        }
        case RootExpr::Kind::Sym: {
            const long d = root_dim(r->a);
            if (d == 0) return K0Elem::one();
            const long e = integer_of(Rat(r->n) * binomial(d + r->n - 1, r->n) / Rat(d), "det exponent of a symmetric power");
            return root_det(r->a, reg).pow(e);
        }
    }
    return K0Elem::one();
}

RootPtr root_dual(const RootPtr& r, const RegistryPtr& reg) {
    switch (r->kind) {
        case RootExpr::Kind::Empty:
        case RootExpr::Kind::Unit:
            return r;
        case RootExpr::Kind::Atom: {
            const AtomDecl& d = r->reg->get(r->atom_name);
            if (d.kind == AtomKind::NegativeGen || d.kind == AtomKind::PositiveGen)
                return root_scaled(r, d.dual_twist);
            if (d.kind == AtomKind::Opaque)
                throw Error(ErrorKind::DualUnavailable, "opaque atom '" + d.name + "' has no declared dual");
            return root_scaled(root_unit(), Monomial{{r->atom_name, -1}});
        }
        case RootExpr::Kind::Scaled:
            return root_scaled(root_dual(r->a, reg), monomial_inverse(r->unit));
        case RootExpr::Kind::Sum:
            return root_sum(root_dual(r->a, reg), root_dual(r->b, reg));
        case RootExpr::Kind::Prod:
            return root_prod(root_dual(r->a, reg), root_dual(r->b, reg));
        case RootExpr::Kind::Ext:
            return root_ext(root_dual(r->a, reg), r->n);
        case RootExpr::Kind::Sym:
            return root_sym(root_dual(r->a, reg), r->n);
    }
    return r;
}

long SymObject::chi_plus() const {
    long d = 0;
    for (const auto& s : summands)
        if (!s.odd) d += root_dim(s.roots);
    return d;
}

long SymObject::chi_minus() const {
    long d = 0;
    for (const auto& s : summands)
        if (s.odd) d += root_dim(s.roots);
    return -d;
}

SymObject sym_unit(const RegistryPtr& reg) { return SymObject{reg, {SymSummand{false, root_unit()}}}; }

SymObject sym_lefschetz(const RegistryPtr& reg, int power) {
    return SymObject{reg, {SymSummand{false, root_scaled(root_unit(), Monomial{{"L", power}})}}};
}

SymObject sym_artin(const RegistryPtr& reg, const std::string& name) {
    AtomDecl decl;
    decl.name = name;
    decl.kind = AtomKind::ArtinOrder2;
    reg->declare(std::move(decl));
    return SymObject{reg, {SymSummand{false, root_atom(reg, name)}}};
}

SymObject sym_projective_space(const RegistryPtr& reg, int n) {
    SymObject out{reg, {}};
    for (int i = 0; i <= n; ++i)
        out.summands.push_back(SymSummand{false, i == 0 ? root_unit() : root_scaled(root_unit(), Monomial{{"L", i}})});
    return out;
}

SymObject dsum(const SymObject& a, const SymObject& b) {
    if (a.reg != b.reg) throw Error(ErrorKind::BackendError, "objects from different registries");
    SymObject out = a;
    out.summands.insert(out.summands.end(), b.summands.begin(), b.summands.end());
    return out;
}

SymObject tensor(const SymObject& a, const SymObject& b) {
    if (a.reg != b.reg) throw Error(ErrorKind::BackendError, "objects from different registries");
    SymObject out{a.reg, {}};
    for (const auto& sa : a.summands)
        for (const auto& sb : b.summands) {
            if (root_dim(sa.roots) == 0 || root_dim(sb.roots) == 0) continue;
            out.summands.push_back(SymSummand{sa.odd != sb.odd, root_prod(sa.roots, sb.roots)});
        }
    return out;
}

SymObject dual(const SymObject& a) {
    SymObject out{a.reg, {}};
    for (const auto& s : a.summands) out.summands.push_back(SymSummand{s.odd, root_dual(s.roots, a.reg)});
    return out;
}

SymObject parity_part(const SymObject& a, bool even) {
    SymObject out{a.reg, {}};
    for (const auto& s : a.summands)
        if (s.odd != even) out.summands.push_back(s);
    return out;
}

namespace {

SymObject graded_power(const SymObject& m, int n, bool symmetric) {
    RootPtr even = root_empty();
    RootPtr odd = root_empty();
    for (const auto& s : m.summands) {
        if (s.odd) odd = root_sum(odd, s.roots);
        else even = root_sum(even, s.roots);
    }
    const long deven = root_dim(even);
    const long dodd = root_dim(odd);
    SymObject out{m.reg, {}};
    for (int q = 0; q <= n; ++q) {
        const int p = n - q;
        // Super rule: symmetric powers act as plain h on the even part and
        // plain e on the odd part; exterior powers the other way around.
        if (symmetric && q > dodd) continue;  // e_q beyond the odd dimension
        if (!symmetric && p > deven) continue; // e_p beyond the even dimension
        if (deven == 0 && p > 0) continue;     // any power of the zero object
        if (dodd == 0 && q > 0) continue;
        RootPtr efac = symmetric ? root_sym(even, p) : root_ext(even, p);
        RootPtr ofac = symmetric ? root_ext(odd, q) : root_sym(odd, q);
        RootPtr term = root_prod(efac, ofac);
        if (root_dim(term) == 0) continue;
        out.summands.push_back(SymSummand{q % 2 == 1, std::move(term)});
    }
    return out;
}

} // namespace

SymObject sym_power(const SymObject& m, int n) { return graded_power(m, n, true); }
SymObject ext_power(const SymObject& m, int n) { return graded_power(m, n, false); }

K0Elem class_of(const SymObject& m) {
    K0Elem acc = K0Elem::zero();
    for (const auto& s : m.summands) {
        if (root_dim(s.roots) == 0) continue;
        acc = acc + root_power_sums(s.roots, 1, m.reg)[0];
    }
    return acc;
}

K0Elem sym_class_symbolic(const SymObject& m, int n) { return class_of(sym_power(m, n)); }
K0Elem ext_class_symbolic(const SymObject& m, int n) { return class_of(ext_power(m, n)); }

K0Elem det_symbolic(const SymObject& m) {
    K0Elem plus = K0Elem::one();
    K0Elem minus = K0Elem::one();
    for (const auto& s : m.summands) {
        const K0Elem d = root_det(s.roots, m.reg);
        if (s.odd) minus = minus * d;
        else plus = plus * d;
    }
    std::optional<K0Elem> minus_inv = try_invert(minus);
    if (!minus_inv)
        throw Error(ErrorKind::C1ViolationCandidate,
                    "determinant of the negative part is not a unit monomial: " + minus.str());
    K0Elem det = plus * (*minus_inv);
    if (!det.is_unit_monomial() && !det.is_one())
        throw Error(ErrorKind::C1ViolationCandidate, "determinant is not a unit monomial: " + det.str());
    return det;
}

SymObject det_object(const SymObject& m) {
    const K0Elem det = det_symbolic(m);
    auto term = det.single_term();
    return SymObject{m.reg, {SymSummand{false, root_scaled(root_unit(), term->first)}}};
}

// --- generator packs ----------------------------------------------------------

namespace {

std::string h1_name(int g) { return "h1_" + std::to_string(g); }
std::string sym_name(int n, int g) { return "s" + std::to_string(n) + "_" + std::to_string(g); }

void declare_curve_atoms(const RegistryPtr& reg, int g) {
    if (g < 0) throw Error(ErrorKind::BackendError, "curve pack needs genus >= 0");
    if (g == 0) return;
    for (int n = 1; n <= g; ++n) {
        AtomDecl s;
        s.name = sym_name(n, g);
        s.kind = AtomKind::Opaque;
        reg->declare(std::move(s));
    }
    AtomDecl h1;
    h1.name = h1_name(g);
    h1.kind = AtomKind::NegativeGen;
    h1.dim = 2 * g;
    h1.table.reserve(static_cast<size_t>(2 * g) + 1);
    for (int n = 0; n <= 2 * g; ++n) {
        if (n == 0) {
            h1.table.push_back(K0Elem::one());
        } else if (n <= g) {
            h1.table.push_back(K0Elem::atom(reg, sym_name(n, g)));
        } else if (n < 2 * g) {
            // Duality relation: s_n = s_{2g-n} * L^{n-g}.
            h1.table.push_back(
                K0Elem::monomial_elem(reg, Monomial{{sym_name(2 * g - n, g), 1}, {"L", n - g}}, Rat(1)));
        } else {
            h1.table.push_back(K0Elem::monomial_elem(reg, Monomial{{"L", g}}, Rat(1)));
        }
    }
    h1.dual_twist = Monomial{{"L", -1}};
    h1.det_monomial = Monomial{{"L", g}};
    reg->declare(std::move(h1));
}

} // namespace

SymObject curve_h1(const RegistryPtr& reg, int g) {
    declare_curve_atoms(reg, g);
    if (g == 0) return SymObject{reg, {}};
    return SymObject{reg, {SymSummand{true, root_atom(reg, h1_name(g))}}};
}

SymObject curve_pack(const RegistryPtr& reg, int g) {
    declare_curve_atoms(reg, g);
    SymObject out = sym_unit(reg);
    if (g > 0) out.summands.push_back(SymSummand{true, root_atom(reg, h1_name(g))});
    out.summands.push_back(SymSummand{false, root_scaled(root_unit(), Monomial{{"L", 1}})});
    return out;
}

SymObject abelian_pack(const RegistryPtr& reg, int g) {
    if (g < 1) throw Error(ErrorKind::BackendError, "abelian pack needs g >= 1");
    declare_curve_atoms(reg, g);
    RootPtr h1 = root_atom(reg, h1_name(g));
    SymObject out{reg, {}};
    for (int i = 0; i <= 2 * g; ++i)
        out.summands.push_back(SymSummand{i % 2 == 1, root_ext(h1, i)});
    return out;
}

SymObject blowup_pack(const RegistryPtr& reg, const std::string& artin_name) {
    AtomDecl a;
    a.name = artin_name;
    a.kind = AtomKind::ArtinOrder2;
    reg->declare(std::move(a));
    RootPtr ns = root_sum(root_unit(), root_sum(root_unit(), root_atom(reg, artin_name)));
    SymObject out = sym_unit(reg);
    out.summands.push_back(SymSummand{false, root_scaled(ns, Monomial{{"L", 1}})});
    out.summands.push_back(SymSummand{false, root_scaled(root_unit(), Monomial{{"L", 2}})});
    return out;
}

// --- backend ----------------------------------------------------------------------

long SymbolicBackend::chi(const Part& p) const {
    const long plus = p.chi_plus();
    const long minus = p.chi_minus();
    if (plus != 0 && minus != 0) throw Error(ErrorKind::BackendError, "expected a pure-parity part");
    return plus != 0 ? plus : minus;
}

namespace {

// Whole series of complete homogeneous (h) or elementary (e) values of a root
// multiset at the class level, by the Newton recursion. Equivalent to the
// memoized per-n plethysm but quadratic in nmax, which matters for the long
// series windows of the functional-equation checks.
std::vector<K0Elem> class_series_of(const RootPtr& roots, int nmax, const RegistryPtr& reg, bool complete) {
    const std::vector<K0Elem> p = root_power_sums(roots, nmax, reg);
    std::vector<K0Elem> out(static_cast<size_t>(nmax) + 1, K0Elem::zero());
    out[0] = K0Elem::one();
    for (int n = 1; n <= nmax; ++n) {
        K0Elem acc = K0Elem::zero();
        for (int j = 1; j <= n; ++j) {
            K0Elem term = p[static_cast<size_t>(j - 1)] * out[static_cast<size_t>(n - j)];
            acc += (complete || j % 2 == 1) ? term : -term;
        }
        out[static_cast<size_t>(n)] = K0Elem(Rat(1, n)) * acc;
    }
    return out;
}

std::vector<K0Elem> batch_power_classes(const SymObject& m, int nmax, bool symmetric) {
    RootPtr even = root_empty();
    RootPtr odd = root_empty();
    for (const auto& s : m.summands) {
        if (s.odd) odd = root_sum(odd, s.roots);
        else even = root_sum(even, s.roots);
    }
    const std::vector<K0Elem> even_series = class_series_of(even, nmax, m.reg, symmetric);
    const std::vector<K0Elem> odd_series = class_series_of(odd, nmax, m.reg, !symmetric);
    std::vector<K0Elem> out(static_cast<size_t>(nmax) + 1, K0Elem::zero());
    for (int n = 0; n <= nmax; ++n) {
        K0Elem acc = K0Elem::zero();
        for (int q = 0; q <= n; ++q)
            acc += even_series[static_cast<size_t>(n - q)] * odd_series[static_cast<size_t>(q)];
        out[static_cast<size_t>(n)] = acc;
    }
    return out;
}

} // namespace

std::vector<K0Elem> SymbolicBackend::sym_classes(const Part& p, int nmax) const {
    return batch_power_classes(p, nmax, true);
}

std::vector<K0Elem> SymbolicBackend::ext_classes(const Part& p, int nmax) const {
    return batch_power_classes(p, nmax, false);
}

} // namespace mzw
