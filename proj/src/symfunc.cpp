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

#include "mzw/symfunc.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

namespace mzw {

namespace {

// z_lambda = prod over distinct part sizes i with multiplicity m: i^m * m!.
Rat z_of_partition(const std::vector<int>& parts) {
    Rat z(1);
    size_t i = 0;
    while (i < parts.size()) {
        size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        const long m = static_cast<long>(j - i);
        for (long t = 0; t < m; ++t) z *= Rat(parts[i]);
        for (long t = 2; t <= m; ++t) z *= Rat(t);
        i = j;
    }
    return z;
}

void gen_partitions(int n, int maxpart, std::vector<int>& cur, std::vector<PBasisTerm>& out) {
    if (n == 0) {
        const Rat zinv = Rat(1) / z_of_partition(cur);
        const int len = static_cast<int>(cur.size());
        int total = 0;
        for (int p : cur) total += p;
        const bool neg = ((total - len) % 2) != 0;
        out.push_back(PBasisTerm{cur, neg ? -zinv : zinv, zinv});
        return;
    }
    for (int p = std::min(n, maxpart); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

std::shared_mutex g_mutex;
std::map<int, std::shared_ptr<const std::vector<PBasisTerm>>> g_table;

} // namespace

const std::shared_ptr<const std::vector<PBasisTerm>>& p_basis_expansion(int n) {
    {
        std::shared_lock lock(g_mutex);
        auto it = g_table.find(n);
        if (it != g_table.end()) return it->second;
    }
    auto terms = std::make_shared<std::vector<PBasisTerm>>();
    std::vector<int> cur;
    gen_partitions(n, n, cur, *terms);
    std::unique_lock lock(g_mutex);
    auto [it, inserted] = g_table.emplace(n, std::move(terms));
    (void)inserted; // a concurrent fill computed the same table
    return it->second;
}

} // namespace mzw
