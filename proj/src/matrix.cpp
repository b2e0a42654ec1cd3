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

#include "mzw/matrix.hpp"

#include <algorithm>
#include <map>

#include "mzw/errors.hpp"

namespace mzw {

RatMat::RatMat(const std::vector<std::vector<Rat>>& rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows[0].size()) : 0;
    a_.assign(static_cast<size_t>(rows_) * cols_, Rat(0));
    for (int i = 0; i < rows_; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != cols_)
            throw Error(ErrorKind::BackendError, "ragged matrix rows");
        for (int j = 0; j < cols_; ++j) at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
}

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

RatMat operator*(const RatMat& x, const RatMat& y) {
    if (x.cols_ != y.rows_) throw Error(ErrorKind::BackendError, "matrix product shape mismatch");
    RatMat out(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
        for (int k = 0; k < x.cols_; ++k) {
            const Rat& v = x.at(i, k);
            if (v.is_zero()) continue;
            for (int j = 0; j < y.cols_; ++j) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

RatMat operator*(const Rat& s, const RatMat& m) {
    RatMat out = m;
    for (int i = 0; i < out.rows_; ++i)
        for (int j = 0; j < out.cols_; ++j) out.at(i, j) *= s;
    return out;
}

bool operator==(const RatMat& x, const RatMat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
}

RatMat RatMat::transpose() const {
    RatMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Rat RatMat::trace() const {
    Rat t(0);
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

Rat RatMat::det() const {
    if (!is_square()) throw Error(ErrorKind::BackendError, "determinant of non-square matrix");
    RatMat m = *this;
    Rat d(1);
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int r = col; r < rows_; ++r)
            if (!m.at(r, col).is_zero()) { pivot = r; break; }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        const Rat inv = Rat(1) / m.at(col, col);
        for (int r = col + 1; r < rows_; ++r) {
            const Rat f = m.at(r, col) * inv;
            if (f.is_zero()) continue;
            for (int j = col; j < cols_; ++j) m.at(r, j) -= f * m.at(col, j);
        }
    }
    return d;
}

std::optional<RatMat> RatMat::inverse() const {
    if (!is_square()) return std::nullopt;
    RatMat m = *this;
    RatMat inv = identity(rows_);
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int r = col; r < rows_; ++r)
            if (!m.at(r, col).is_zero()) { pivot = r; break; }
        if (pivot < 0) return std::nullopt;
        if (pivot != col)
            for (int j = 0; j < cols_; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        const Rat piv_inv = Rat(1) / m.at(col, col);
        for (int j = 0; j < cols_; ++j) {
            m.at(col, j) *= piv_inv;
            inv.at(col, j) *= piv_inv;
        }
        for (int r = 0; r < rows_; ++r) {
            if (r == col) continue;
            const Rat f = m.at(r, col);
            if (f.is_zero()) continue;
            for (int j = 0; j < cols_; ++j) {
                m.at(r, j) -= f * m.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

bool RatMat::is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? Rat(1) : Rat(0))) return false;
    return true;
}

std::optional<int> RatMat::finite_order(int bound) const {
    if (!is_square()) return std::nullopt;
    RatMat p = *this;
    for (int k = 1; k <= bound; ++k) {
        if (p.is_identity()) return k;
        p = p * (*this);
    }
    return std::nullopt;
}

RatMat kronecker(const RatMat& x, const RatMat& y) {
    RatMat out(x.rows() * y.rows(), x.cols() * y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            if (x.at(i, j).is_zero()) continue;
            for (int k = 0; k < y.rows(); ++k)
                for (int l = 0; l < y.cols(); ++l)
                    out.at(i * y.rows() + k, j * y.cols() + l) = x.at(i, j) * y.at(k, l);
        }
    return out;
}

RatMat block_diag(const RatMat& x, const RatMat& y) {
    RatMat out(x.rows() + y.rows(), x.cols() + y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) out.at(x.rows() + i, x.cols() + j) = y.at(i, j);
    return out;
}

std::vector<std::vector<int>> index_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    if (k >= 0 && k <= n) rec(rec, 0);
    return out;
}

std::vector<std::vector<int>> index_multisets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    if (k >= 0 && n > 0) rec(rec, 0);
    else if (k == 0) out.push_back({});
    return out;
}

RatMat exterior_power_matrix(const RatMat& m, int k) {
    if (!m.is_square()) throw Error(ErrorKind::BackendError, "exterior power of non-square matrix");
    const auto idx = index_subsets(m.rows(), k);
    RatMat out(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b) {
            RatMat minor(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) minor.at(i, j) = m.at(idx[a][static_cast<size_t>(i)], idx[b][static_cast<size_t>(j)]);
            out.at(static_cast<int>(a), static_cast<int>(b)) = minor.det();
        }
    return out;
}

RatMat symmetric_power_matrix(const RatMat& m, int k) {
    if (!m.is_square()) throw Error(ErrorKind::BackendError, "symmetric power of non-square matrix");
    const int n = m.rows();
    const auto idx = index_multisets(n, k);
    std::map<std::vector<int>, int> pos;
    for (size_t a = 0; a < idx.size(); ++a) pos[idx[a]] = static_cast<int>(a);
    RatMat out(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    // Column b: image of the monomial x_{b_1}...x_{b_k} under x_j -> sum_i m_{ij} x_i.
    for (size_t b = 0; b < idx.size(); ++b) {
        std::map<std::vector<int>, Rat> expansion;
        expansion[{}] = Rat(1);
        for (int j : idx[b]) {
            std::map<std::vector<int>, Rat> next;
            for (const auto& [mono, coef] : expansion)
                for (int i = 0; i < n; ++i) {
                    if (m.at(i, j).is_zero()) continue;
                    std::vector<int> mono2 = mono;
                    mono2.insert(std::lower_bound(mono2.begin(), mono2.end(), i), i);
                    next[mono2] += coef * m.at(i, j);
                }
            expansion = std::move(next);
        }
        for (const auto& [mono, coef] : expansion) out.at(pos.at(mono), static_cast<int>(b)) = coef;
    }
    return out;
}

} // namespace mzw
