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

// Acceptance suite: every check below is an exact identity (tolerance zero);
// one PASS/FAIL line is printed per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "mzw/dsl.hpp"
#include "mzw/symbolic.hpp"
#include "mzw/symfunc.hpp"
#include "mzw/zeta.hpp"

using namespace mzw;

namespace {

struct Failure {
    std::string detail;
};

void expect(bool ok, const std::string& detail) {
    if (!ok) throw Failure{detail};
}

SignedObject<FrobObj> split(const FrobObj& m) { return {parity_part(m, true), parity_part(m, false)}; }
SignedObject<SymObject> split(const SymObject& m) { return {parity_part(m, true), parity_part(m, false)}; }

const Rat q2(2);

std::vector<FrobObj> corpus; // shared by several criteria

// --- tiny finite-field point counts (independent oracle) --------------------

int gf4_mul(int a, int b) {
    int prod[3] = {0, 0, 0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (((a >> i) & 1) && ((b >> j) & 1)) prod[i + j] ^= 1;
    if (prod[2]) {
        prod[1] ^= 1;
        prod[0] ^= 1;
    }
    return prod[0] | (prod[1] << 1);
}

int brute_count_f2() {
    int n = 1;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            if (((y * y + y) % 2) == ((x * x * x) % 2)) ++n;
    return n;
}

int brute_count_f4() {
    int n = 1;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            if ((gf4_mul(y, y) ^ y) == gf4_mul(x, gf4_mul(x, x))) ++n;
    return n;
}

// --- enumeration oracle for the power-sum transforms -------------------------

void subsets_rec(const std::vector<Rat>& roots, size_t from, int left, const Rat& acc, std::vector<Rat>& out) {
    if (left == 0) {
        out.push_back(acc);
        return;
    }
    for (size_t i = from; i < roots.size(); ++i) subsets_rec(roots, i + 1, left - 1, acc * roots[i], out);
}

void multisets_rec(const std::vector<Rat>& roots, size_t from, int left, const Rat& acc, std::vector<Rat>& out) {
    if (left == 0) {
        out.push_back(acc);
        return;
    }
    for (size_t i = from; i < roots.size(); ++i) multisets_rec(roots, i, left - 1, acc * roots[i], out);
}

std::vector<Rat> power_sums_of(const std::vector<Rat>& roots, int count) {
    std::vector<Rat> out(static_cast<size_t>(count), Rat(0));
    for (const Rat& r : roots)
        for (int k = 1; k <= count; ++k) out[static_cast<size_t>(k - 1)] += r.pow(k);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Failure{"cannot open " + path};
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// --- criteria ----------------------------------------------------------------

void criterion_funceq_corpus() {
    FrobeniusBackend be(q2);
    std::mt19937_64 rng(testing::corpus_seed());
    corpus.clear();
    for (int i = 0; i < 200; ++i) corpus.push_back(testing::random_frob(rng));
    for (size_t i = 0; i < corpus.size(); ++i) {
        const auto m = split(corpus[i]);
        const int order = static_cast<int>(default_order(be, m));
        const FuncEqReport<K0Class> rep = funceq_check(be, m, order);
        expect(rep.holds, "object " + std::to_string(i) + " (seed " + std::to_string(testing::corpus_seed()) +
                              "): " + frob_to_json(corpus[i]));
    }
}

void criterion_rationality() {
    FrobeniusBackend be(q2);
    for (size_t i = 0; i < corpus.size(); ++i) {
        const auto m = split(corpus[i]);
        const Series<K0Class> via_rational = ratfun_expand(zeta_rational(be, m), 20);
        const Series<K0Class> direct = zeta_series(be, m, 20);
        expect(via_rational == direct,
               "object " + std::to_string(i) + ": rational expansion deviates from the series");
    }
}

void criterion_weil_curve() {
    const FrobObj e = frob_curve(Poly<Rat>{Rat(1), Rat(0), Rat(2)}, q2);
    expect(classical_zeta_factored(e) == "(1+2T^2)/((1-T)(1-2T))", "classical zeta rendering");
    const RatFun<Rat> z = classical_zeta(e);
    expect(z.num == Poly<Rat>{Rat(1), Rat(0), Rat(2)} && z.den == Poly<Rat>{Rat(1), Rat(-3), Rat(2)},
           "classical zeta rational form");
    expect(counting(e, 1) == Rat(brute_count_f2()) && brute_count_f2() == 3, "F_2 point count");
    expect(counting(e, 2) == Rat(brute_count_f4()) && brute_count_f4() == 9, "F_4 point count");

    FrobeniusBackend be(q2);
    const auto m = split(e);
    const FuncEqReport<K0Class> rep = funceq_check_selfdual(be, m, 1, static_cast<int>(default_order(be, m)));
    expect(rep.holds && rep.chi == 0 && rep.det == K0Class::one(), "self-dual functional equation, d = 1");
}

void criterion_kapranov_symbolic() {
    for (int g = 1; g <= 2; ++g) {
        RegistryPtr reg = AtomRegistry::create();
        SymbolicBackend be(reg);
        const SymObject c = curve_pack(reg, g);
        const auto m = split(c);
        const RatFun<K0Elem> z = zeta_rational(be, m);
        expect(z.num.degree() == 2 * g, "numerator degree 2g");
        const K0Elem lef = K0Elem::atom(reg, "L");
        const Poly<K0Elem> den =
            Poly<K0Elem>{K0Elem::one(), -K0Elem::one()} * Poly<K0Elem>{K0Elem::one(), -lef};
        expect(z.den == den, "denominator (1-T)(1-LT)");
        const FuncEqReport<K0Elem> rep = funceq_check(be, m, static_cast<int>(default_order(be, m)));
        expect(rep.holds, "coefficientwise functional equation, genus " + std::to_string(g));
        expect(rep.det == K0Elem::atom(reg, "L", 1 - g), "det h(C) = L^{1-g}");
    }
}

void criterion_det_identities() {
    std::mt19937_64 rng(testing::corpus_seed() + 101);
    for (int trial = 0; trial < 50; ++trial) {
        const FrobObj m = testing::random_frob(rng);
        const FrobObj n = testing::random_frob(rng);
        const K0Class dm = det_object(m);
        const K0Class dn = det_object(n);
        expect(det_object(dsum(m, n)) == dm * dn, "det of a direct sum");
        const long chi_m = chi_stats(m).chi, chi_n = chi_stats(n).chi;
        expect(det_object(tensor(m, n)) == dm.pow(chi_n) * dn.pow(chi_m), "det of a tensor product");
        for (int k = 1; k <= 3; ++k) {
            if (chi_m != 0) {
                const Rat r = Rat(k) * binomial(chi_m, k) / Rat(chi_m);
                expect(r.is_integer(), "integrality of the exterior det exponent");
                expect(det_class_of(ext_class(m, k)) == dm.pow(r.numerator().get_si()),
                       "det of an exterior power, trial " + std::to_string(trial));
                const Rat s = Rat(k) * binomial(chi_m + k - 1, k) / Rat(chi_m);
                expect(s.is_integer(), "integrality of the symmetric det exponent");
                expect(det_class_of(sym_class(m, k)) == dm.pow(s.numerator().get_si()),
                       "det of a symmetric power, trial " + std::to_string(trial));
            }
        }
    }
}

void criterion_weak_polarization() {
    std::mt19937_64 rng(testing::corpus_seed() + 103);
    for (int trial = 0; trial < 20; ++trial) {
        const FrobObj m = testing::random_frob(rng);
        for (int n = 0; n <= 2; ++n) {
            const FrobObj big = dsum(m, tensor(dual(m), frob_tate(n, q2)));
            const long chi_big = chi_stats(big).chi;
            expect(det_object(big) * det_object(big) == class_of(frob_lefschetz(q2)).pow(n * chi_big),
                   "det^2 = L^{n chi}, trial " + std::to_string(trial) + " n " + std::to_string(n));
        }
    }
}

void criterion_abelian() {
    std::mt19937_64 rng(testing::corpus_seed() + 107);
    for (int g = 1; g <= 3; ++g) {
        const RatMat h1 = testing::random_invertible(rng, 2 * g);
        const FrobObj a = frob_abelian(h1);
        const ChiStats stats = chi_stats(a);
        for (int i = 0; i <= 2 * g; ++i)
            expect(stats.betti.at(i) == binomial(2 * g, i).numerator().get_si(), "Betti numbers C(2g, i)");
        expect(det_object(a) == K0Class::one(), "matrix det h(A) = 1, g = " + std::to_string(g));

        RegistryPtr reg = AtomRegistry::create();
        expect(det_symbolic(abelian_pack(reg, g)).is_one(), "symbolic det h(A) = 1, g = " + std::to_string(g));
    }
}

void criterion_poincare_det() {
    std::mt19937_64 rng(testing::corpus_seed() + 109);
    const K0Class lef = class_of(frob_lefschetz(q2));
    int printed_form_mismatches = 0;
    int printed_form_checks = 0;
    for (int d = 1; d <= 3; ++d) {
        for (int sample = 0; sample < 3; ++sample) {
            const FrobObj x = testing::random_poincare_obj(rng, d, q2);
            const ChiStats stats = chi_stats(x);
            for (const auto& [i, mat] : x.pieces) {
                FrobObj piece;
                piece.pieces.emplace(i, mat);
                const long exp = ((i % 2 == 0) ? 1 : -1) * static_cast<long>(i) * mat.rows();
                expect(det_object(piece) * det_object(piece) == lef.pow(exp),
                       "degreewise det(h^i)^2 = L^{(-1)^i i b_i}");
            }
            FrobObj middle;
            middle.pieces.emplace(d, x.pieces.at(d));
            const long bd = x.pieces.at(d).rows();
            const Rat expo = Rat(d, 2) * (Rat(stats.chi) - Rat(d % 2 == 0 ? 1 : -1) * Rat(bd));
            expect(expo.is_integer(), "global det exponent integrality");
            expect(det_object(x) == lef.pow(expo.numerator().get_si()) * det_object(middle),
                   "global det in the derived form L^{(d/2)(chi-(-1)^d b_d)} (x) det(h^d)");

            // The printed even-d variant pairs the middle degree d/2 instead
            // of d; evaluate it as stated and count where it deviates.
            if (d % 2 == 0) {
                ++printed_form_checks;
                FrobObj half;
                const int hd = d / 2;
                long bhalf = 0;
                if (x.pieces.count(hd)) {
                    half.pieces.emplace(hd, x.pieces.at(hd));
                    bhalf = x.pieces.at(hd).rows();
                }
                const Rat printed_expo =
                    Rat(d, 2) * (Rat(stats.chi) - Rat((d / 2) % 2 == 0 ? 1 : -1) * Rat(d) * Rat(bhalf));
                const K0Class printed = printed_expo.is_integer()
                                            ? lef.pow(printed_expo.numerator().get_si()) *
                                                  (half.pieces.empty() ? K0Class::one() : det_object(half))
                                            : K0Class::zero();
                if (!(printed == det_object(x))) ++printed_form_mismatches;
            }
        }
    }
    // The blown-up plane is the concrete witness: b_1 = 0, so the printed
    // form yields L^5 while the determinant is L^5 (x) A.
    const FrobObj s = frob_blowup_p2_conjugate(q2);
    const ChiStats stats = chi_stats(s);
    const Rat printed_expo = Rat(1) * (Rat(stats.chi) - Rat(-1) * Rat(2) * Rat(0));
    const K0Class printed = lef.pow(printed_expo.numerator().get_si());
    ++printed_form_checks;
    if (!(printed == det_object(s))) ++printed_form_mismatches;
    std::cout << "    note: the printed even-dimension determinant formula (middle degree d/2) deviates on "
              << printed_form_mismatches << "/" << printed_form_checks
              << " synthetic self-dual objects; the derived form (middle degree d) verifies on all of them\n";
    expect(printed_form_mismatches > 0, "expected at least one witness against the printed variant");
}

void criterion_blowup() {
    const FrobObj s = frob_blowup_p2_conjugate(q2);
    FrobObj h2;
    h2.pieces.emplace(2, s.pieces.at(2));
    const WeightInfo w2 = weight_of_invertible(det_object(h2));
    expect(w2.weight == 6 && w2.delta == Rat(-8), "det h^2 realizes L^3 (x) A (delta -q^3)");
    const WeightInfo w = weight_of_invertible(det_object(s));
    expect(w.weight == 10 && w.delta == Rat(-32), "det h(S) realizes L^5 (x) A at weight 10");

    RegistryPtr reg = AtomRegistry::create();
    const SymObject sym_s = blowup_pack(reg, "A");
    const C1Form f2 = c1_normal_form(det_symbolic(SymObject{reg, {sym_s.summands[1]}}));
    expect(f2.r == 3 && f2.artin == K0Elem::atom(reg, "A"), "c1 normal form of det h^2 is (3, A)");
    const C1Form f = c1_normal_form(det_symbolic(sym_s));
    expect(f.r == 5 && f.weight == 10 && f.artin == K0Elem::atom(reg, "A"), "c1 normal form of det h(S)");
}

void criterion_bounds_and_duality() {
    std::mt19937_64 rng(testing::corpus_seed() + 113);
    int pure_checked = 0;
    while (pure_checked < 50) {
        const FrobObj m = testing::random_frob(rng);
        for (const bool even : {true, false}) {
            const FrobObj part = parity_part(m, even);
            if (part.empty()) continue;
            ++pure_checked;
            const ChiStats st = chi_stats(part);
            const long dim = even ? st.chi_plus : -st.chi_minus;
            if (even) {
                const auto ext = ext_classes(part, static_cast<int>(dim) + 1);
                expect(ext.back().is_zero(), "Lambda^{chi+ +1} vanishes");
                expect(try_invert(ext[static_cast<size_t>(dim)]).has_value(), "top exterior power is invertible");
                const K0Class det_inv = *try_invert(det_object(part));
                const auto ext_dual = ext_classes(dual(part), static_cast<int>(dim));
                for (long n = 0; n <= dim; ++n)
                    expect(ext_dual[static_cast<size_t>(n)] == ext[static_cast<size_t>(dim - n)] * det_inv,
                           "pairing identity for exterior powers");
            } else {
                const auto sym = sym_classes(part, static_cast<int>(dim) + 1);
                expect(sym.back().is_zero(), "S^{-chi- +1} vanishes");
                expect(try_invert(sym[static_cast<size_t>(dim)]).has_value(), "top symmetric power is invertible");
                const K0Class top_inv = *try_invert(sym[static_cast<size_t>(dim)]);
                const auto sym_dual = sym_classes(dual(part), static_cast<int>(dim));
                for (long n = 0; n <= dim; ++n)
                    expect(sym_dual[static_cast<size_t>(n)] == sym[static_cast<size_t>(dim - n)] * top_inv,
                           "pairing identity for symmetric powers");
            }
        }
    }
}

void criterion_sign_phenomenon() {
    FrobeniusBackend be(q2);
    RatMat one(1, 1);
    one.at(0, 0) = Rat(1);
    const FrobObj odd_line = frob_generic({{1, one}});
    const auto m = split(odd_line);
    expect(chi_stats(odd_line).chi_minus % 2 != 0, "the odd line has odd chi-");
    const FuncEqReport<K0Class> rep = funceq_check(be, m, 8);
    expect(rep.holds, "functional equation holds for the odd line");
    const SignedFormReport<K0Class> t2a = funceq_check_signed_form(be, m, 8);
    expect(!t2a.applicable, "the (-T)^chi form is flagged inapplicable for odd chi-");
    expect(!t2a.report.holds, "the (-T)^chi form indeed differs by a sign");

    int even_checked = 0;
    for (size_t i = 0; i < corpus.size() && even_checked < 20; ++i) {
        const auto mi = split(corpus[i]);
        if (chi_stats(corpus[i]).chi_minus % 2 != 0) continue;
        ++even_checked;
        const int order = static_cast<int>(default_order(be, mi));
        const SignedFormReport<K0Class> form = funceq_check_signed_form(be, mi, order);
        expect(form.applicable && form.report.holds, "both forms agree when chi- is even");
    }
    expect(even_checked == 20, "found 20 corpus objects with even chi-");
}

void criterion_symfunc_oracle() {
    std::mt19937_64 rng(testing::corpus_seed() + 127);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    std::uniform_int_distribution<int> size_pick(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = size_pick(rng);
        std::vector<Rat> roots;
        for (int i = 0; i < d; ++i) {
            Rat r(num(rng), den(rng));
            if (r.is_zero()) r = Rat(1);
            roots.push_back(r);
        }
        for (int n = 0; n <= 4; ++n) {
            const int count = 4;
            const PowerSumSeq<Rat> p = power_sums_of(roots, n * count + count);
            std::vector<Rat> ext_products, sym_products;
            subsets_rec(roots, 0, n, Rat(1), ext_products);
            multisets_rec(roots, 0, n, Rat(1), sym_products);
            expect(ps_exterior(p, n, count) == power_sums_of(ext_products, count),
                   "exterior transform vs subset enumeration");
            expect(ps_symmetric(p, n, count) == power_sums_of(sym_products, count),
                   "symmetric transform vs multiset enumeration");
        }
    }
}

void criterion_cli() {
    using namespace mzw::dsl;
    {
        const RunResult res = run_program_text(slurp(testing::data_path("frob_basic.mz")));
        expect(res.exit_code == 0, "frobenius fixture exit code");
        expect(res.output == slurp(testing::data_path("frob_basic.out")), "frobenius fixture golden output");
    }
    {
        SessionOptions opts;
        opts.backend = BackendKind::Symbolic;
        const RunResult res = run_program_text(slurp(testing::data_path("sym_basic.mz")), opts);
        expect(res.exit_code == 0, "symbolic fixture exit code");
        expect(res.output == slurp(testing::data_path("sym_basic.out")), "symbolic fixture golden output");
    }
    {
        // parse/print round trip and byte-identical save -> load -> save
        const std::string src = "let E = curve(weil=[1, 0, 2], q=2); let X = E * psp(1, 2);";
        Session s1;
        std::string out;
        for (const Stmt& st : parse_program(src).stmts) {
            const std::string printed = stmt_str(st);
            const Program back = parse_program(printed);
            expect(back.stmts.size() == 1 && stmt_str(back.stmts[0]) == printed, "statement print round trip");
            s1.run_stmt(st, out);
        }
        const std::string snap = s1.to_json();
        Session s2;
        s2.load_json(snap);
        expect(s2.to_json() == snap, "session save/load/save is byte-identical");
    }
}

struct Criterion {
    std::string name;
    std::function<void()> fn;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"functional equation on 200 random graded objects, window 2(chi+ + |chi-|)+8", criterion_funceq_corpus},
        {"rational form expanded to order 20 equals the zeta series on the corpus", criterion_rationality},
        {"supersingular curve over F_2: classical zeta, point counts, self-dual form", criterion_weil_curve},
        {"symbolic curve zeta P(T)/((1-T)(1-LT)), functional equation, det = L^{1-g}", criterion_kapranov_symbolic},
        {"determinant identities for sums, tensors and Schur transforms (50 pairs)", criterion_det_identities},
        {"weak polarization: det^2 = L^{n chi} on twisted self-sums (20 objects)", criterion_weak_polarization},
        {"abelian objects: binomial Betti numbers, det = 1, backends agree (g <= 3)", criterion_abelian},
        {"synthetic self-dual objects: degreewise det^2 and the derived global det form", criterion_poincare_det},
        {"blown-up plane: det h^2 = L^3 (x) A, det h(S) = L^5 (x) A at weight 10", criterion_blowup},
        {"vanishing bounds, invertible top powers and pairing identities (50 parts)", criterion_bounds_and_duality},
        {"odd line: odd chi-, equation holds, signed form flagged; even chi- agrees", criterion_sign_phenomenon},
        {"power-sum transforms match exhaustive enumeration (multisets <= 4, n <= 4)", criterion_symfunc_oracle},
        {"CLI golden files, parse/print round trips, byte-identical session snapshots", criterion_cli},
    };

    int passed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criteria[i].fn();
        } catch (const Failure& f) {
            failure = f.detail;
        } catch (const std::exception& e) {
            failure = e.what();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty()) {
            ++passed;
            std::cout << "criterion " << (i + 1) << " PASS [" << ms << " ms] " << criteria[i].name << "\n";
        } else {
            std::cout << "criterion " << (i + 1) << " FAIL [" << ms << " ms] " << criteria[i].name << ": " << failure
                      << "\n";
        }
    }
    std::cout << "acceptance: " << passed << "/" << criteria.size() << " criteria passed (seed "
              << testing::corpus_seed() << ")\n";
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
