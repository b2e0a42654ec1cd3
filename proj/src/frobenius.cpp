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

#include "mzw/frobenius.hpp"

#include <json.hpp>

#include <sstream>

#include "mzw/errors.hpp"
#include "mzw/symfunc.hpp"

namespace mzw {

namespace {

void require_piece(const RatMat& m, int degree) {
    if (!m.is_square() || m.rows() == 0)
        throw Error(ErrorKind::SingularPiece, "piece at degree " + std::to_string(degree) + " is not a nonempty square matrix");
    if (m.det().is_zero())
        throw Error(ErrorKind::SingularPiece, "piece at degree " + std::to_string(degree) + " is singular");
}

std::vector<Rat> trace_power_sums(const RatMat& f, int count) {
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(std::max(count, 0)));
    RatMat p = f;
    for (int k = 1; k <= count; ++k) {
        out.push_back(p.trace());
        if (k < count) p = p * f;
    }
    return out;
}

Poly<Rat> piece_char_poly(const RatMat& f) {
    const int b = f.rows();
    return poly_from_power_sums(trace_power_sums(f, b), b);
}

} // namespace

// --- constructors ---------------------------------------------------------

FrobObj frob_unit() {
    FrobObj m;
    m.pieces.emplace(0, RatMat::identity(1));
    return m;
}

FrobObj frob_lefschetz(const Rat& q) { return frob_tate(1, q); }

FrobObj frob_tate(int n, const Rat& q) {
    if (q.is_zero()) throw Error(ErrorKind::SingularPiece, "tate twist with q = 0");
    RatMat one_by_one(1, 1);
    one_by_one.at(0, 0) = q.pow(n);
    FrobObj m;
    m.pieces.emplace(2 * n, one_by_one);
    return m;
}

FrobObj frob_artin(const RatMat& mat) {
    if (!mat.is_square() || mat.rows() == 0)
        throw Error(ErrorKind::BadArtinMatrix, "Artin piece must be a nonempty square matrix");
    if (!mat.finite_order(24))
        throw Error(ErrorKind::BadArtinMatrix, "matrix has no order <= 24");
    FrobObj m;
    m.pieces.emplace(0, mat);
    return m;
}

FrobObj frob_curve(const Poly<Rat>& weil, const Rat& q) {
    if (weil.is_zero() || weil[0] != Rat(1))
        throw Error(ErrorKind::BadWeilPoly, "Weil polynomial must have constant term 1");
    const int deg = weil.degree();
    if (deg % 2 != 0) throw Error(ErrorKind::BadWeilPoly, "Weil polynomial must have even degree");
    const int g = deg / 2;
    for (int n = 0; n <= deg; ++n) {
        if (weil[deg - n] != q.pow(g - n) * weil[n])
            throw Error(ErrorKind::BadWeilPoly, "coefficients fail the q-palindromy c_{2g-n} = q^{g-n} c_n");
    }
    FrobObj m;
    m.pieces.emplace(0, RatMat::identity(1));
    if (g > 0) {
        // Companion matrix of x^{2g} + c_1 x^{2g-1} + ... + c_{2g}; its
        // reversed characteristic polynomial is the Weil polynomial itself.
        RatMat c(deg, deg);
        for (int i = 1; i < deg; ++i) c.at(i, i - 1) = Rat(1);
        for (int i = 0; i < deg; ++i) c.at(i, deg - 1) = -weil[deg - i];
        m.pieces.emplace(1, c);
    }
    RatMat top(1, 1);
    top.at(0, 0) = q;
    m.pieces.emplace(2, top);
    return m;
}

FrobObj frob_abelian(const RatMat& h1) {
    if (!h1.is_square() || h1.rows() == 0 || h1.rows() % 2 != 0)
        throw Error(ErrorKind::SingularPiece, "abelian h1 must be square of even size");
    require_piece(h1, 1);
    const int twog = h1.rows();
    FrobObj m;
    for (int i = 0; i <= twog; ++i) m.pieces.emplace(i, exterior_power_matrix(h1, i));
    return m;
}

FrobObj frob_projective_space(int n, const Rat& q) {
    if (n < 0) throw Error(ErrorKind::BackendError, "projective space of negative dimension");
    FrobObj m;
    for (int i = 0; i <= n; ++i) {
        RatMat piece(1, 1);
        piece.at(0, 0) = q.pow(i);
        m.pieces.emplace(2 * i, piece);
    }
    return m;
}

FrobObj frob_generic(const std::map<int, RatMat>& pieces) {
    FrobObj m;
    for (const auto& [d, mat] : pieces) {
        require_piece(mat, d);
        m.pieces.emplace(d, mat);
    }
    return m;
}

FrobObj frob_blowup_p2_conjugate(const Rat& q) {
    if (q.is_zero()) throw Error(ErrorKind::SingularPiece, "blow-up surface with q = 0");
    FrobObj m;
    m.pieces.emplace(0, RatMat::identity(1));
    RatMat h2(3, 3);
    h2.at(0, 0) = q;
    h2.at(1, 2) = q;
    h2.at(2, 1) = q;
    m.pieces.emplace(2, h2);
    RatMat h4(1, 1);
    h4.at(0, 0) = q * q;
    m.pieces.emplace(4, h4);
    return m;
}

// --- rigid tensor structure -------------------------------------------------

FrobObj dsum(const FrobObj& a, const FrobObj& b) {
    FrobObj out = a;
    for (const auto& [d, mat] : b.pieces) {
        auto it = out.pieces.find(d);
        if (it == out.pieces.end()) out.pieces.emplace(d, mat);
        else it->second = block_diag(it->second, mat);
    }
    return out;
}

FrobObj tensor(const FrobObj& a, const FrobObj& b) {
    FrobObj out;
    for (const auto& [da, ma] : a.pieces)
        for (const auto& [db, mb] : b.pieces) {
            const int d = da + db;
            RatMat k = kronecker(ma, mb);
            auto it = out.pieces.find(d);
            if (it == out.pieces.end()) out.pieces.emplace(d, std::move(k));
            else it->second = block_diag(it->second, k);
        }
    return out;
}

FrobObj dual(const FrobObj& a) {
    FrobObj out;
    for (const auto& [d, mat] : a.pieces) {
        auto inv = mat.inverse();
        if (!inv) throw Error(ErrorKind::DualUnavailable, "piece at degree " + std::to_string(d) + " is singular");
        out.pieces.emplace(-d, inv->transpose());
    }
    return out;
}

FrobObj parity_part(const FrobObj& a, bool even) {
    FrobObj out;
    for (const auto& [d, mat] : a.pieces)
        if ((d % 2 == 0) == even) out.pieces.emplace(d, mat);
    return out;
}

// --- class-level computations -------------------------------------------------

K0Class class_of(const FrobObj& m) {
    K0Class out;
    for (const auto& [d, mat] : m.pieces)
        out = out + K0Class::from_polynomial_piece(d, piece_char_poly(mat));
    return out;
}

ChiStats chi_stats(const FrobObj& m) {
    ChiStats s;
    for (const auto& [d, mat] : m.pieces) {
        s.betti[d] = mat.rows();
        if (d % 2 == 0) s.chi_plus += mat.rows();
        else s.chi_minus -= mat.rows();
    }
    s.chi = s.chi_plus + s.chi_minus;
    s.chi_minus_even = (s.chi_minus % 2) == 0;
    return s;
}

namespace {

// Super power classes of a graded object, all n = 0..nmax at once.
// Per degree i the root-level combinatorics is exterior ("e-like") when the
// operation and the parity disagree with plain symmetric behaviour:
//   super-Lambda: e on even degrees, h on odd; super-S: h on even, e on odd.
std::vector<K0Class> graded_power_classes(const FrobObj& m, int nmax, bool symmetric) {
    struct Cell {
        Rat dim{0}; // dimensions can exceed machine integers before the guard
        std::vector<Rat> psums; // power sums of the accumulated root multiset
    };
    using State = std::map<std::pair<int, int>, Cell>; // (n, degree) -> cell

    // Pass 1: dimensions only, to size the power-sum budget exactly.
    std::map<std::pair<int, int>, Rat> dims;
    dims[{0, 0}] = Rat(1);
    for (const auto& [deg, mat] : m.pieces) {
        const bool elike = symmetric ? (deg % 2 != 0) : (deg % 2 == 0);
        const int b = mat.rows();
        std::map<std::pair<int, int>, Rat> next;
        for (const auto& [key, dim] : dims) {
            const auto [n0, w0] = key;
            const int mmax = elike ? std::min(b, nmax - n0) : (nmax - n0);
            for (int k = 0; k <= mmax; ++k) {
                const Rat cnt = elike ? binomial(b, k) : binomial(b + k - 1, k);
                next[{n0 + k, w0 + k * deg}] += dim * cnt;
            }
        }
        dims = std::move(next);
    }
    Rat budget(0);
    for (const auto& [key, dim] : dims) budget = std::max(budget, dim);
    if (budget > Rat(200000))
        throw Error(ErrorKind::BackendError,
                    "super power class too large to materialize exactly (dimension " + budget.str() + ")");
    const int len = static_cast<int>(budget.to_long_checked("power class dimension"));

    // Pass 2: power sums, one degree at a time. The seed cell is the unit
    // object: the empty tensor product, root multiset {1}, power sums all 1.
    State state;
    state[{0, 0}] = Cell{1, std::vector<Rat>(static_cast<size_t>(len), Rat(1))};
    for (const auto& [deg, mat] : m.pieces) {
        const bool elike = symmetric ? (deg % 2 != 0) : (deg % 2 == 0);
        const int b = mat.rows();
        const int mmax = elike ? std::min(b, nmax) : nmax;
        const std::vector<Rat> traces = trace_power_sums(mat, mmax * len);
        const std::vector<PowerSumSeq<Rat>> table =
            elike ? ps_exterior_all(traces, mmax, len) : ps_symmetric_all(traces, mmax, len);
        State next;
        for (const auto& [key, cell] : state) {
            const auto [n0, w0] = key;
            for (int k = 0; k <= std::min(mmax, nmax - n0); ++k) {
                const Rat cnt = elike ? binomial(b, k) : binomial(b + k - 1, k);
                if (cnt.is_zero()) continue;
                Cell& tgt = next[{n0 + k, w0 + k * deg}];
                if (tgt.psums.empty()) tgt.psums.assign(static_cast<size_t>(len), Rat(0));
                tgt.dim += cell.dim * cnt;
                // Tensoring with a factor multiplies power sums pointwise;
                // the direct sum over compositions adds them.
                if (k == 0) {
                    for (int t = 0; t < len; ++t) tgt.psums[static_cast<size_t>(t)] += cell.psums[static_cast<size_t>(t)];
                } else {
                    for (int t = 0; t < len; ++t)
                        tgt.psums[static_cast<size_t>(t)] +=
                            cell.psums[static_cast<size_t>(t)] * table[static_cast<size_t>(k)][static_cast<size_t>(t)];
                }
            }
        }
        state = std::move(next);
    }

    std::vector<K0Class> out(static_cast<size_t>(nmax) + 1, K0Class::zero());
    for (const auto& [key, cell] : state) {
        const auto [n, w] = key;
        if (cell.dim.is_zero()) continue;
        Poly<Rat> p = poly_from_power_sums(cell.psums, static_cast<int>(cell.dim.to_long_checked("piece dimension")));
        out[static_cast<size_t>(n)] = out[static_cast<size_t>(n)] + K0Class::from_polynomial_piece(w, std::move(p));
    }
    return out;
}

} // namespace

std::vector<K0Class> sym_classes(const FrobObj& m, int nmax) { return graded_power_classes(m, nmax, true); }
std::vector<K0Class> ext_classes(const FrobObj& m, int nmax) { return graded_power_classes(m, nmax, false); }
K0Class sym_class(const FrobObj& m, int n) { return sym_classes(m, n).back(); }
K0Class ext_class(const FrobObj& m, int n) { return ext_classes(m, n).back(); }

namespace {

FrobObj graded_power_object(const FrobObj& m, int n, bool symmetric) {
    std::vector<std::pair<int, RatMat>> degrees(m.pieces.begin(), m.pieces.end());
    FrobObj out;
    long total = 0;
    RatMat seed(1, 1);
    seed.at(0, 0) = Rat(1);
    auto rec = [&](auto&& self, size_t idx, int remaining, int degshift, const RatMat& acc) -> void {
        if (idx == degrees.size()) {
            if (remaining != 0) return;
            total += acc.rows();
            if (total > 5000)
                throw Error(ErrorKind::BackendError, "super power object too large to materialize");
            auto it = out.pieces.find(degshift);
            if (it == out.pieces.end()) out.pieces.emplace(degshift, acc);
            else it->second = block_diag(it->second, acc);
            return;
        }
        const auto& [deg, mat] = degrees[idx];
        const bool elike = symmetric ? (deg % 2 != 0) : (deg % 2 == 0);
        const int mmax = elike ? std::min(mat.rows(), remaining) : remaining;
        for (int k = 0; k <= mmax; ++k) {
            RatMat factor = elike ? exterior_power_matrix(mat, k) : symmetric_power_matrix(mat, k);
            if (factor.rows() == 0) continue;
            self(self, idx + 1, remaining - k, degshift + k * deg, k == 0 ? acc : kronecker(acc, factor));
        }
    };
    rec(rec, 0, n, 0, seed);
    return out;
}

} // namespace

FrobObj sym_power_object(const FrobObj& m, int n) { return graded_power_object(m, n, true); }
FrobObj ext_power_object(const FrobObj& m, int n) { return graded_power_object(m, n, false); }

K0Class det_object(const FrobObj& m) {
    Rat delta(1);
    int weight = 0;
    for (const auto& [d, mat] : m.pieces) {
        const Rat piece_det = mat.det();
        if (d % 2 == 0) {
            delta *= piece_det;
            weight += d * mat.rows();
        } else {
            delta /= piece_det;
            weight -= d * mat.rows();
        }
    }
    return K0Class::from_polynomial_piece(weight, Poly<Rat>{Rat(1), -delta});
}

Rat counting(const FrobObj& m, int power) {
    if (power < 1) throw Error(ErrorKind::BackendError, "counting needs power >= 1");
    Rat acc(0);
    for (const auto& [d, mat] : m.pieces) {
        RatMat p = mat;
        for (int k = 1; k < power; ++k) p = p * mat;
        if (d % 2 == 0) acc += p.trace();
        else acc -= p.trace();
    }
    return acc;
}

RatFun<Rat> classical_zeta(const FrobObj& m) {
    Poly<Rat> num = Poly<Rat>::one();
    Poly<Rat> den = Poly<Rat>::one();
    for (const auto& [d, mat] : m.pieces) {
        const Poly<Rat> p = piece_char_poly(mat);
        if (d % 2 == 0) den = den * p;
        else num = num * p;
    }
    return ratfun_normalize(num, den);
}

namespace {

std::string compact_poly_str(const Poly<Rat>& p) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= p.degree(); ++i) {
        const Rat& c = p[i];
        if (c.is_zero()) continue;
        const Rat a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? "-" : "+");
        }
        if (i == 0) os << a.str();
        else {
            if (a != Rat(1)) os << a.str();
            os << "T";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

} // namespace

std::string classical_zeta_factored(const FrobObj& m) {
    std::vector<std::string> num, den;
    for (const auto& [d, mat] : m.pieces) {
        const Poly<Rat> p = piece_char_poly(mat);
        if (p.is_one()) continue;
        (d % 2 == 0 ? den : num).push_back(compact_poly_str(p));
    }
    std::ostringstream os;
    if (num.empty()) os << "1";
    else for (const std::string& f : num) os << "(" << f << ")";
    if (!den.empty()) {
        os << "/";
        if (den.size() == 1) os << "(" << den[0] << ")";
        else {
            os << "(";
            for (const std::string& f : den) os << "(" << f << ")";
            os << ")";
        }
    }
    return os.str();
}

// --- morphisms -----------------------------------------------------------------

FrobMor make_morphism(const FrobObj& src, const FrobObj& tgt, std::map<int, RatMat> blocks) {
    for (const auto& [d, block] : blocks) {
        auto is = src.pieces.find(d);
        auto it = tgt.pieces.find(d);
        if (is == src.pieces.end() || it == tgt.pieces.end())
            throw Error(ErrorKind::BackendError, "morphism block at a degree missing from source or target");
        if (block.rows() != it->second.rows() || block.cols() != is->second.rows())
            throw Error(ErrorKind::BackendError, "morphism block shape mismatch at degree " + std::to_string(d));
        if (!(block * is->second == it->second * block))
            throw Error(ErrorKind::BackendError, "morphism block does not intertwine the Frobenius actions at degree " +
                                                     std::to_string(d));
    }
    return FrobMor{std::move(blocks)};
}

FrobMor identity_morphism(const FrobObj& m) {
    std::map<int, RatMat> blocks;
    for (const auto& [d, mat] : m.pieces) blocks.emplace(d, RatMat::identity(mat.rows()));
    return FrobMor{std::move(blocks)};
}

std::pair<Rat, Rat> det_morphism(const FrobObj& src, const FrobObj& tgt, const FrobMor& f) {
    const ChiStats s = chi_stats(src), t = chi_stats(tgt);
    if (s.chi_plus != t.chi_plus || s.chi_minus != t.chi_minus)
        throw Error(ErrorKind::ChiMismatch, "source and target have different chi^+ or chi^-");
    Rat even(1), odd(1);
    bool even_dead = false, odd_dead = false;
    std::map<int, std::pair<int, int>> shapes; // degree -> (src b, tgt b)
    for (const auto& [d, mat] : src.pieces) shapes[d].first = mat.rows();
    for (const auto& [d, mat] : tgt.pieces) shapes[d].second = mat.rows();
    for (const auto& [d, shape] : shapes) {
        const bool is_even = (d % 2 == 0);
        if (shape.first != shape.second) {
            // A degree-graded map with mismatched piece sizes cannot be an
            // isomorphism; its parity determinant vanishes.
            (is_even ? even_dead : odd_dead) = true;
            continue;
        }
        auto it = f.blocks.find(d);
        if (it == f.blocks.end()) {
            (is_even ? even_dead : odd_dead) = true; // implicit zero block
            continue;
        }
        const Rat det = it->second.det();
        if (is_even) even *= det;
        else odd *= det;
    }
    if (even_dead) even = Rat(0);
    if (odd_dead) odd = Rat(0);
    return {even, odd};
}

// --- serialization ----------------------------------------------------------------

std::string frob_to_json(const FrobObj& m) {
    nlohmann::json degrees = nlohmann::json::object();
    for (const auto& [d, mat] : m.pieces) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < mat.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < mat.cols(); ++j) row.push_back(mat.at(i, j).str());
            rows.push_back(std::move(row));
        }
        degrees[std::to_string(d)] = std::move(rows);
    }
    nlohmann::json root;
    root["degrees"] = std::move(degrees);
    return root.dump();
}

FrobObj frob_from_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::IoError, std::string("bad object JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("degrees") || !root["degrees"].is_object())
        throw Error(ErrorKind::IoError, "object JSON must be {\"degrees\": {...}}");
    std::map<int, RatMat> pieces;
    for (const auto& [key, rows] : root["degrees"].items()) {
        int degree = 0;
        try {
            degree = std::stoi(key);
        } catch (const std::exception&) {
            throw Error(ErrorKind::IoError, "bad degree key '" + key + "'");
        }
        if (!rows.is_array() || rows.empty())
            throw Error(ErrorKind::IoError, "degree " + key + " must map to a nonempty matrix");
        std::vector<std::vector<Rat>> entries;
        for (const auto& row : rows) {
            if (!row.is_array()) throw Error(ErrorKind::IoError, "matrix rows must be arrays");
            std::vector<Rat> r;
            for (const auto& e : row) {
                if (!e.is_string()) throw Error(ErrorKind::IoError, "matrix entries must be exact strings");
                r.emplace_back(e.get<std::string>());
            }
            entries.push_back(std::move(r));
        }
        pieces.emplace(degree, RatMat(entries));
    }
    return frob_generic(pieces);
}

// --- zeta-engine backend --------------------------------------------------------------

long FrobeniusBackend::chi(const Part& p) const {
    const ChiStats s = chi_stats(p);
    if (s.chi_plus != 0 && s.chi_minus != 0)
        throw Error(ErrorKind::BackendError, "expected a pure-parity part");
    return s.chi;
}

K0Class FrobeniusBackend::lefschetz_class() const {
    return K0Class::from_polynomial_piece(2, Poly<Rat>{Rat(1), -q_});
}

} // namespace mzw
