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

#ifndef MZW_MATRIX_HPP
#define MZW_MATRIX_HPP

#include <optional>
#include <vector>

#include "mzw/rat.hpp"

namespace mzw {

/// Dense matrix of exact rationals, row-major.
class RatMat {
  public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {}
    explicit RatMat(const std::vector<std::vector<Rat>>& rows);

    static RatMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    friend RatMat operator*(const RatMat& x, const RatMat& y);
    friend RatMat operator*(const Rat& s, const RatMat& m);
    friend bool operator==(const RatMat& x, const RatMat& y);

    RatMat transpose() const;
    Rat trace() const;
    Rat det() const;
    std::optional<RatMat> inverse() const;
    bool is_identity() const;

    /// Smallest k in [1, bound] with M^k = I, or nullopt.
    std::optional<int> finite_order(int bound) const;

  private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

RatMat kronecker(const RatMat& x, const RatMat& y);
RatMat block_diag(const RatMat& x, const RatMat& y);

/// k-th exterior power: the C(n,k) x C(n,k) matrix of k x k minors, rows and
/// columns indexed by k-subsets in lexicographic order.
RatMat exterior_power_matrix(const RatMat& m, int k);

/// k-th symmetric power acting on degree-k monomials in the basis vectors,
/// multisets in lexicographic order.
RatMat symmetric_power_matrix(const RatMat& m, int k);

/// The k-subsets (or k-multisets) of {0..n-1} in lexicographic order; exposed
/// for tests that need the index conventions above.
std::vector<std::vector<int>> index_subsets(int n, int k);
std::vector<std::vector<int>> index_multisets(int n, int k);

} // namespace mzw

#endif
