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

#include "mzw/k0elem.hpp"

#include <sstream>

#include "mzw/errors.hpp"

namespace mzw {

namespace {

bool decl_equal(const AtomDecl& a, const AtomDecl& b) {
    if (a.name != b.name || a.kind != b.kind || a.weight != b.weight || a.dim != b.dim) return false;
    if (a.dual_twist != b.dual_twist || a.det_monomial != b.det_monomial) return false;
    if (a.table.size() != b.table.size()) return false;
    for (size_t i = 0; i < a.table.size(); ++i)
        if (!(a.table[i] == b.table[i])) return false;
    return true;
}

const RegistryPtr& merge_registries(const RegistryPtr& a, const RegistryPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (a != b)
        throw Error(ErrorKind::BackendError, "elements from different atom registries cannot be combined");
    return a;
}

} // namespace

std::string monomial_str(const Monomial& m) {
    if (m.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, e] : m) {
        if (!first) os << "*";
        first = false;
        os << name;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

std::shared_ptr<AtomRegistry> AtomRegistry::create() {
    auto reg = std::shared_ptr<AtomRegistry>(new AtomRegistry());
    AtomDecl lef;
    lef.name = "L";
    lef.kind = AtomKind::InvertibleEven;
    lef.weight = 2;
    reg->atoms_.emplace("L", std::move(lef));
    return reg;
}

void AtomRegistry::declare(AtomDecl decl) {
    if (decl.name.empty()) throw Error(ErrorKind::BackendError, "atom with empty name");
    if (decl.kind == AtomKind::InvertibleEven && decl.weight % 2 != 0)
        throw Error(ErrorKind::BackendError, "invertible atom '" + decl.name + "' must have even weight");
    if (decl.kind == AtomKind::NegativeGen || decl.kind == AtomKind::PositiveGen) {
        if (decl.dim <= 0)
            throw Error(ErrorKind::BackendError, "table generator '" + decl.name + "' needs positive dimension");
        if (static_cast<int>(decl.table.size()) != decl.dim + 1)
            throw Error(ErrorKind::MissingTable,
                        "atom '" + decl.name + "' needs a table of length dim+1 = " + std::to_string(decl.dim + 1));
        if (!decl.table[0].is_one())
            throw Error(ErrorKind::BackendError, "atom '" + decl.name + "' table entry 0 must be 1");
        if (!decl.table.back().is_unit_monomial())
            throw Error(ErrorKind::BackendError, "atom '" + decl.name + "' top table entry must be a unit monomial");
    }
    auto it = atoms_.find(decl.name);
    if (it != atoms_.end()) {
        if (!decl_equal(it->second, decl))
            throw Error(ErrorKind::BackendError, "conflicting redeclaration of atom '" + decl.name + "'");
        return;
    }
    atoms_.emplace(decl.name, std::move(decl));
}

bool AtomRegistry::contains(const std::string& name) const { return atoms_.count(name) != 0; }

const AtomDecl& AtomRegistry::get(const std::string& name) const {
    auto it = atoms_.find(name);
    if (it == atoms_.end()) throw Error(ErrorKind::NameError, "unknown atom '" + name + "'");
    return it->second;
}

K0Elem::K0Elem(const Rat& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

bool K0Elem::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == Rat(1);
}

K0Elem k0_normalize(const RegistryPtr& reg, const std::vector<std::pair<Monomial, Rat>>& raw) {
    K0Elem out;
    out.reg_ = reg;
    for (const auto& [mono, coeff] : raw) {
        if (coeff.is_zero()) continue;
        Monomial reduced;
        for (const auto& [name, e] : mono) {
            if (e == 0) continue;
            if (!reg || !reg->contains(name))
                throw Error(ErrorKind::NameError, "monomial mentions undeclared atom '" + name + "'");
            const AtomDecl& decl = reg->get(name);
            int e2 = e;
            if (decl.kind == AtomKind::ArtinOrder2) {
                e2 = ((e % 2) + 2) % 2; // A^2 -> 1
                if (e2 == 0) continue;
            } else if (decl.kind != AtomKind::InvertibleEven) {
                if (e2 < 0)
                    throw Error(ErrorKind::BackendError,
                                "negative exponent of non-invertible atom '" + name + "'");
            }
            reduced.emplace(name, e2);
        }
        auto it = out.terms_.find(reduced);
        if (it == out.terms_.end()) {
            out.terms_.emplace(std::move(reduced), coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    if (out.terms_.empty()) out.reg_ = reg; // zero keeps the registry for later ops
    return out;
}

K0Elem K0Elem::atom(const RegistryPtr& reg, const std::string& name, int exponent) {
    return monomial_elem(reg, Monomial{{name, exponent}}, Rat(1));
}

K0Elem K0Elem::monomial_elem(const RegistryPtr& reg, Monomial m, Rat coeff) {
    return k0_normalize(reg, {{std::move(m), std::move(coeff)}});
}

K0Elem& K0Elem::operator+=(const K0Elem& o) {
    reg_ = merge_registries(reg_, o.reg_);
    for (const auto& [mono, coeff] : o.terms_) {
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            terms_.emplace(mono, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

K0Elem operator+(const K0Elem& a, const K0Elem& b) {
    K0Elem out = a;
    out += b;
    return out;
}

K0Elem K0Elem::operator-() const {
    K0Elem out;
    out.reg_ = reg_;
    for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, -coeff);
    return out;
}

K0Elem operator-(const K0Elem& a, const K0Elem& b) { return a + (-b); }

K0Elem operator*(const K0Elem& a, const K0Elem& b) {
    const RegistryPtr reg = merge_registries(a.reg_, b.reg_);
    K0Elem out;
    out.reg_ = reg;
    // Scalar fast path: a pure rational factor only rescales coefficients.
    auto scalar_of = [](const K0Elem& x) -> const Rat* {
        if (x.terms_.size() == 1 && x.terms_.begin()->first.empty()) return &x.terms_.begin()->second;
        return nullptr;
    };
    if (const Rat* s = scalar_of(a)) {
        for (const auto& [m, c] : b.terms_) out.terms_.emplace_hint(out.terms_.end(), m, *s * c);
        return out;
    }
    if (const Rat* s = scalar_of(b)) {
        for (const auto& [m, c] : a.terms_) out.terms_.emplace_hint(out.terms_.end(), m, *s * c);
        return out;
    }
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            // Both inputs are normal, so only atoms appearing in both
            // monomials can need the A^2 -> 1 rewrite.
            for (const auto& [name, e] : mb) {
                auto [it, fresh] = m.emplace(name, e);
                if (fresh) continue;
                it->second += e;
                const AtomDecl& decl = reg->get(name);
                if (decl.kind == AtomKind::ArtinOrder2) it->second = ((it->second % 2) + 2) % 2;
                if (it->second == 0) m.erase(it);
            }
            auto it = out.terms_.find(m);
            if (it == out.terms_.end()) {
                Rat c = ca * cb;
                if (!c.is_zero()) out.terms_.emplace(std::move(m), std::move(c));
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    return out;
}

std::optional<std::pair<Monomial, Rat>> K0Elem::single_term() const {
    if (terms_.size() != 1) return std::nullopt;
    return *terms_.begin();
}

bool K0Elem::is_unit_monomial() const {
    auto t = single_term();
    if (!t) return false;
    for (const auto& [name, e] : t->first) {
        const AtomDecl& decl = reg_->get(name);
        if (decl.kind != AtomKind::InvertibleEven && decl.kind != AtomKind::ArtinOrder2) return false;
        (void)e;
    }
    return true;
}

std::optional<K0Elem> try_invert(const K0Elem& x) {
    auto t = x.single_term();
    if (!t || t->second.is_zero()) return std::nullopt;
    Monomial inv;
    for (const auto& [name, e] : t->first) {
        const AtomDecl& decl = x.reg_->get(name);
        if (decl.kind == AtomKind::ArtinOrder2) inv.emplace(name, e); // self-inverse
        else if (decl.kind == AtomKind::InvertibleEven) inv.emplace(name, -e);
        else return std::nullopt;
    }
    return K0Elem::monomial_elem(x.reg_, std::move(inv), Rat(1) / t->second);
}

K0Elem K0Elem::pow(long e) const {
    if (e < 0) {
        std::optional<K0Elem> inv = try_invert(*this);
        if (!inv) throw Error(ErrorKind::NotInvertibleClass, "negative power of a non-unit element");
        return inv->pow(-e);
    }
    K0Elem acc = K0Elem::one();
    if (reg_) acc = k0_normalize(reg_, {{Monomial{}, Rat(1)}});
    K0Elem base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

C1Form c1_normal_form(const K0Elem& u) {
    auto t = u.single_term();
    if (!t) throw Error(ErrorKind::NotInvertibleClass, "element is not a single monomial");
    if (!(t->second == Rat(1)))
        throw Error(ErrorKind::NotInC1Form, "unit has a nontrivial rational coefficient " + t->second.str());
    C1Form out;
    std::vector<std::pair<Monomial, Rat>> artin_raw{{Monomial{}, Rat(1)}};
    Monomial artin_mono;
    for (const auto& [name, e] : t->first) {
        const AtomDecl& decl = u.registry()->get(name);
        if (name == "L") {
            out.r = e;
        } else if (decl.kind == AtomKind::ArtinOrder2) {
            artin_mono.emplace(name, e);
        } else {
            throw Error(ErrorKind::NotInC1Form,
                        "unit contains atom '" + name + "' outside L and Artin classes");
        }
    }
    out.artin = artin_mono.empty() ? K0Elem::monomial_elem(u.registry(), {}, Rat(1))
                                   : K0Elem::monomial_elem(u.registry(), artin_mono, Rat(1));
    out.weight = static_cast<int>(2 * out.r);
    out.odd_weight = (out.weight % 2) != 0;
    return out;
}

std::string K0Elem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        const Rat a = coeff.abs();
        if (first) {
            if (coeff.sign() < 0) os << "-";
            first = false;
        } else {
            os << (coeff.sign() < 0 ? " - " : " + ");
        }
        if (mono.empty()) {
            os << a.str();
        } else {
            if (!(a == Rat(1))) os << a.str() << "*";
            os << monomial_str(mono);
        }
    }
    return os.str();
}

} // namespace mzw
