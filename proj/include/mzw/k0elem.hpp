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

#ifndef MZW_K0ELEM_HPP
#define MZW_K0ELEM_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mzw/rat.hpp"

namespace mzw {

/// atom name -> integer exponent; absent means exponent 0.
using Monomial = std::map<std::string, int>;

std::string monomial_str(const Monomial& m);

enum class AtomKind {
    InvertibleEven, // invertible of declared even weight (L has weight 2)
    ArtinOrder2,    // order-2 class of weight 0: A*A -> 1
    NegativeGen,    // odd generator with a finite sym table
    PositiveGen,    // even generator with a finite ext table
    Opaque,         // free symbol (a curve's s_n): no relations, not a unit
};

class K0Elem;

/// Declaration of a typed atom of the presented lambda-ring.
struct AtomDecl {
    std::string name;
    AtomKind kind = AtomKind::InvertibleEven;
    int weight = 0; // InvertibleEven only
    int dim = 0;    // table generators only
    /// Entry n is the class of the n-th super symmetric power (NegativeGen)
    /// or exterior power (PositiveGen) of the generator; length dim+1,
    /// entry 0 = 1, entry dim a unit monomial. In both cases these are the
    /// elementary symmetric functions of the underlying root multiset.
    std::vector<K0Elem> table;
    /// dual(g) = g tensor this invertible monomial (table generators).
    Monomial dual_twist;
    /// Unit monomial equal to the top table entry.
    Monomial det_monomial;
};

/// Append-only atom registry; one per session. Existing declarations never
/// change, so elements created under an earlier state stay valid.
class AtomRegistry {
  public:
    /// Fresh registry holding the Lefschetz atom "L" (invertible, weight 2).
    static std::shared_ptr<AtomRegistry> create();

    /// Adds a declaration; redeclaring an identical atom is a no-op,
    /// conflicting redeclaration throws Error(BackendError).
    void declare(AtomDecl decl);

    bool contains(const std::string& name) const;
    const AtomDecl& get(const std::string& name) const; // Error(NameError)

    const std::map<std::string, AtomDecl>& atoms() const { return atoms_; }

  private:
    AtomRegistry() = default;
    std::map<std::string, AtomDecl> atoms_;
};

using RegistryPtr = std::shared_ptr<AtomRegistry>;

/// Element of the presented lambda-ring in Laurent normal form: a rational
/// combination of monomials over the typed atoms. Invariants: Artin
/// exponents lie in {0,1} (A^2 -> 1 is rewritten away), table-generator
/// exponents are nonnegative, no zero coefficients, deterministic term
/// order (lexicographic on atom names, then exponents).
class K0Elem {
  public:
    K0Elem() = default; // zero
    explicit K0Elem(const Rat& c);

    static K0Elem zero() { return K0Elem(); }
    static K0Elem one() { return K0Elem(Rat(1)); }
    static K0Elem atom(const RegistryPtr& reg, const std::string& name, int exponent = 1);
    static K0Elem monomial_elem(const RegistryPtr& reg, Monomial m, Rat coeff);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    const RegistryPtr& registry() const { return reg_; }

    friend K0Elem operator+(const K0Elem& a, const K0Elem& b);
    friend K0Elem operator-(const K0Elem& a, const K0Elem& b);
    friend K0Elem operator*(const K0Elem& a, const K0Elem& b);
    K0Elem& operator+=(const K0Elem& o);
    K0Elem operator-() const;

    friend bool operator==(const K0Elem& a, const K0Elem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const K0Elem& a, const K0Elem& b) { return !(a.terms_ == b.terms_); }

    /// The single term (monomial, coefficient) if there is exactly one.
    std::optional<std::pair<Monomial, Rat>> single_term() const;
    /// Unit monomial (single term, all atoms invertible kinds).
    bool is_unit_monomial() const;

    /// Integer power; negative exponents require a unit.
    K0Elem pow(long e) const;

    std::string str() const;

  private:
    friend K0Elem k0_normalize(const RegistryPtr& reg, const std::vector<std::pair<Monomial, Rat>>& raw);
    friend std::optional<K0Elem> try_invert(const K0Elem& x);
    RegistryPtr reg_; // null while the element is purely rational
    std::map<Monomial, Rat> terms_;
};

/// Fixed point of the rewrite system {A^2 -> 1, merge like monomials, drop
/// zeros}; idempotent and Rat-linear. All K0Elem arithmetic routes through
/// this.
K0Elem k0_normalize(const RegistryPtr& reg, const std::vector<std::pair<Monomial, Rat>>& raw);

/// Inverse of a unit monomial (coefficient inverted, invertible-atom
/// exponents negated, Artin exponents kept via A^2 -> 1).
std::optional<K0Elem> try_invert(const K0Elem& x);

/// Result of writing a unit monomial as L^r * (product of Artin atoms).
struct C1Form {
    long r = 0;
    K0Elem artin; // product of Artin atoms (1 when trivial)
    int weight = 0;
    bool odd_weight = false;
};

/// eq-(det = L^r tensor A) normal form; throws Error(NotInC1Form) when the
/// unit contains a table generator or a non-Lefschetz invertible atom, and
/// Error(NotInvertibleClass) when u is not a unit monomial.
C1Form c1_normal_form(const K0Elem& u);

} // namespace mzw

#endif
