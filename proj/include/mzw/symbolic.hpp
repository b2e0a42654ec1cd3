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

#ifndef MZW_SYMBOLIC_HPP
#define MZW_SYMBOLIC_HPP

#include <memory>
#include <vector>

#include "mzw/k0elem.hpp"

namespace mzw {

/// Root data of one pure summand: a recipe for the power sums of the
/// underlying (ungraded) root multiset. All pack objects bottom out in atoms
/// with declared tables or invertible monomials, so duals and lambda
/// operations stay exact and symbolic.
class RootExpr;
using RootPtr = std::shared_ptr<const RootExpr>;

RootPtr root_empty();                            // zero object, no roots
RootPtr root_unit();                             // the unit object, root {1}
RootPtr root_atom(const RegistryPtr& reg, const std::string& name);
RootPtr root_scaled(RootPtr inner, Monomial unit); // inner tensor invertible monomial
RootPtr root_sum(RootPtr a, RootPtr b);            // direct sum (union of roots)
RootPtr root_prod(RootPtr a, RootPtr b);           // tensor (pairwise products)
RootPtr root_ext(RootPtr inner, int n);            // plain exterior: e_n of roots
RootPtr root_sym(RootPtr inner, int n);            // plain symmetric: h_n of roots

long root_dim(const RootPtr& r);
/// Power sums p_1..p_count of the root multiset, as ring elements.
std::vector<K0Elem> root_power_sums(const RootPtr& r, int count, const RegistryPtr& reg);
/// Product of all roots (the determinant of the underlying plain object),
/// computed through the det identities of the transform chain: must land on
/// a unit monomial, else Error(C1ViolationCandidate).
K0Elem root_det(const RootPtr& r, const RegistryPtr& reg);
RootPtr root_dual(const RootPtr& r, const RegistryPtr& reg);

/// A formal object presented as a sum of pure summands with parities: the
/// positive part is the even summands, the negative part the odd ones.
struct SymSummand {
    bool odd = false;
    RootPtr roots;
};

struct SymObject {
    RegistryPtr reg;
    std::vector<SymSummand> summands;

    long chi_plus() const;
    long chi_minus() const;
};

SymObject sym_unit(const RegistryPtr& reg);
SymObject sym_lefschetz(const RegistryPtr& reg, int power = 1);
/// Declares (idempotently) an Artin atom of the given name and returns the
/// corresponding even invertible summand.
SymObject sym_artin(const RegistryPtr& reg, const std::string& name);
SymObject sym_projective_space(const RegistryPtr& reg, int n);

SymObject dsum(const SymObject& a, const SymObject& b);
SymObject tensor(const SymObject& a, const SymObject& b);
SymObject dual(const SymObject& a);
SymObject parity_part(const SymObject& a, bool even);

/// Super symmetric/exterior power as an object (mixed parities in general).
SymObject sym_power(const SymObject& m, int n);
SymObject ext_power(const SymObject& m, int n);

/// Classes of super powers in the presented ring.
K0Elem sym_class_symbolic(const SymObject& m, int n);
K0Elem ext_class_symbolic(const SymObject& m, int n);
K0Elem class_of(const SymObject& m);

/// det(M) = Lambda^{chi+}(M+) tensor S^{-chi-}(M-)^{-1}, evaluated through
/// the determinant identities for sums, products and Schur transforms plus
/// the declared tables. A result that is not a unit monomial raises
/// Error(C1ViolationCandidate) - the conjecture monitor.
K0Elem det_symbolic(const SymObject& m);

/// The determinant as an (even, invertible) object.
SymObject det_object(const SymObject& m);

// --- generator packs -------------------------------------------------------

/// Genus-g curve: declares the negative atom h1_<g> of dimension 2g with
/// free symbols s1_<g>..s<g>_<g>, the duality relations s_{2g-n} = s_n L^{g-n},
/// top L^g and dual twist L^{-1}; returns h(C) = 1 + h1 + L.
SymObject curve_pack(const RegistryPtr& reg, int g);
/// The h1 summand alone (odd part of the curve).
SymObject curve_h1(const RegistryPtr& reg, int g);

/// Dimension-g abelian variety over the same h1 atom: h(A) is the sum of the
/// super powers S^i(h1) for i = 0..2g with parities (-1)^i.
SymObject abelian_pack(const RegistryPtr& reg, int g);

/// Rational surface obtained from the plane by blowing up two conjugate
/// points: h(S) = 1 + L*(1 + 1 + A) + L^2 with A the order-2 Artin class of
/// the swapped exceptional divisors.
SymObject blowup_pack(const RegistryPtr& reg, const std::string& artin_name = "A");

// --- zeta-engine backend ------------------------------------------------------

class SymbolicBackend {
  public:
    using Coeff = K0Elem;
    using Part = SymObject;

    explicit SymbolicBackend(RegistryPtr reg) : reg_(std::move(reg)) {}

    long chi(const Part& p) const;
    std::vector<Coeff> sym_classes(const Part& p, int nmax) const;
    std::vector<Coeff> ext_classes(const Part& p, int nmax) const;
    Coeff class_of(const Part& p) const { return mzw::class_of(p); }
    Part dual(const Part& p) const { return mzw::dual(p); }
    Coeff lefschetz_class() const { return K0Elem::atom(reg_, "L"); }
    const RegistryPtr& registry() const { return reg_; }

  private:
    RegistryPtr reg_;
};

} // namespace mzw

#endif
