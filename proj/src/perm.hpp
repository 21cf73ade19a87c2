#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace brachyon {

// Permutations are image vectors: p[i] is where i goes.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// compose(p, q) applies q first: (p*q)(i) = p[q[i]].
inline Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(q.size());
    for (size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

inline Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[p[i]] = (int)i;
    return r;
}

inline bool is_permutation(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= (int)p.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// Sorted list of cycle lengths, fixed points included.
inline std::vector<int> cycle_type(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    std::vector<int> type;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = p[j]) { seen[j] = 1; ++len; }
        type.push_back(len);
    }
    std::sort(type.begin(), type.end());
    return type;
}

inline std::string cycle_notation(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == (int)i) { seen[i] = 1; continue; }
        out += "(";
        bool first = true;
        for (size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            if (!first) out += " ";
            out += std::to_string(j);
            first = false;
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

} // namespace brachyon
