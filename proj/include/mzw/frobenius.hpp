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

#ifndef MZW_FROBENIUS_HPP
#define MZW_FROBENIUS_HPP

#include <map>
#include <string>
#include <vector>

#include "mzw/k0class.hpp"
#include "mzw/matrix.hpp"

namespace mzw {

/// Graded object: an invertible square matrix of exact rationals per degree
/// ("Frobenius" acting on each cohomological degree). Even degrees form the
/// positive part, odd degrees the negative part.
struct FrobObj {
    std::map<int, RatMat> pieces;

    bool empty() const { return pieces.empty(); }
    friend bool operator==(const FrobObj& a, const FrobObj& b) { return a.pieces == b.pieces; }
};

struct ChiStats {
    long chi = 0;
    long chi_plus = 0;
    long chi_minus = 0;
    std::map<int, int> betti;
    bool chi_minus_even = true;
};

// --- constructors ---------------------------------------------------------

FrobObj frob_unit();
FrobObj frob_lefschetz(const Rat& q);
FrobObj frob_tate(int n, const Rat& q);
/// Weight-0 object of finite order (an Artin class). The matrix must satisfy
/// m^k = 1 for some k; otherwise Error(BadArtinMatrix).
FrobObj frob_artin(const RatMat& m);
/// Degrees {0, 1, 2}: [1], the companion matrix of the reversed Weil
/// polynomial, [q]. Requires weil(0) = 1, even degree 2g and the q-palindromy
/// c_{2g-n} = q^{g-n} c_n; otherwise Error(BadWeilPoly).
FrobObj frob_curve(const Poly<Rat>& weil, const Rat& q);
/// Degree i carries the i-th exterior power of h1 for i = 0..2g.
FrobObj frob_abelian(const RatMat& h1);
FrobObj frob_projective_space(int n, const Rat& q);
/// Arbitrary graded matrices; every piece must be square, nonempty and
/// invertible (Error(SingularPiece)).
FrobObj frob_generic(const std::map<int, RatMat>& pieces);
/// The plane blown up in two conjugate points: h^2 = diag(q) + q*swap.
FrobObj frob_blowup_p2_conjugate(const Rat& q);

// --- rigid tensor structure ------------------------------------------------

FrobObj dsum(const FrobObj& a, const FrobObj& b);
FrobObj tensor(const FrobObj& a, const FrobObj& b);
/// Degree negation with inverse-transpose matrices.
FrobObj dual(const FrobObj& a);

/// Even-degree or odd-degree subobject.
FrobObj parity_part(const FrobObj& a, bool even);

// --- class-level computations ----------------------------------------------

/// Reversed characteristic polynomial det(1 - F_i T) per degree.
K0Class class_of(const FrobObj& m);

ChiStats chi_stats(const FrobObj& m);

/// Classes of the super symmetric/exterior powers S^n(M), Lambda^n(M) for
/// n = 0..nmax at once (exterior powers of odd parts behave as symmetric
/// powers and vice versa). Entry n is the zero class beyond the finiteness
/// bound of the corresponding side. Koszul signs of the graded symmetry are
/// invisible at class level; parity enters only through this mixing rule.
std::vector<K0Class> sym_classes(const FrobObj& m, int nmax);
std::vector<K0Class> ext_classes(const FrobObj& m, int nmax);
K0Class sym_class(const FrobObj& m, int n);
K0Class ext_class(const FrobObj& m, int n);

/// Honest graded object realizing the super power, built from exterior and
/// symmetric power matrices. Intended for small cross-checks; the class-level
/// routines above are the production path.
FrobObj sym_power_object(const FrobObj& m, int n);
FrobObj ext_power_object(const FrobObj& m, int n);

/// det(M) = Lambda^top(M+) tensor S^top(M-)^{-1} computed directly from
/// matrix determinants: a 1-dimensional class at the determinant weight.
K0Class det_object(const FrobObj& m);

/// Alternating trace of Frobenius powers: sum_i (-1)^i tr(F_i^m), m >= 1.
Rat counting(const FrobObj& m, int power);

/// prod_i det(1 - F_i T)^{(-1)^{i+1}} as a reduced rational function.
RatFun<Rat> classical_zeta(const FrobObj& m);
/// The same, rendered factored by degree, e.g. "(1 + 2*T^2)/((1 - T)*(1 - 2*T))".
std::string classical_zeta_factored(const FrobObj& m);

// --- morphisms --------------------------------------------------------------

/// Graded morphism: one block per degree (target b_i x source b_i) required
/// to intertwine the two Frobenius actions exactly.
struct FrobMor {
    std::map<int, RatMat> blocks;
};

/// Validates shapes and the intertwining equations; throws Error(BackendError)
/// on violation.
FrobMor make_morphism(const FrobObj& src, const FrobObj& tgt, std::map<int, RatMat> blocks);
FrobMor identity_morphism(const FrobObj& m);

/// (product of even-degree block determinants, product of odd-degree ones).
/// Requires chi^+ and chi^- of source and target to match
/// (Error(ChiMismatch)); degreewise size mismatches make the affected part 0.
std::pair<Rat, Rat> det_morphism(const FrobObj& src, const FrobObj& tgt, const FrobMor& f);

// --- serialization -----------------------------------------------------------

/// {"degrees": {"0": [["1"]], ...}} with exact "p/q" entry strings and
/// lexicographically sorted keys.
std::string frob_to_json(const FrobObj& m);
FrobObj frob_from_json(const std::string& text);

// --- zeta-engine backend ------------------------------------------------------

/// Lambda-context over the class ring K0Class. Parts handed to the engine are
/// pure-parity FrobObjs.
class FrobeniusBackend {
  public:
    using Coeff = K0Class;
    using Part = FrobObj;

    explicit FrobeniusBackend(Rat q = Rat(2)) : q_(std::move(q)) {}

    long chi(const Part& p) const;
    std::vector<Coeff> sym_classes(const Part& p, int nmax) const { return mzw::sym_classes(p, nmax); }
    std::vector<Coeff> ext_classes(const Part& p, int nmax) const { return mzw::ext_classes(p, nmax); }
    Coeff class_of(const Part& p) const { return mzw::class_of(p); }
    Part dual(const Part& p) const { return mzw::dual(p); }
    Coeff lefschetz_class() const;
    const Rat& q() const { return q_; }

  private:
    Rat q_;
};

} // namespace mzw

#endif
