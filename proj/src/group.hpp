#pragma once

#include "base.hpp"
#include "perm.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace brachyon {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Finite group as a Cayley table with the identity pinned at index 0.
// make() validates shape, Latin property, identity position and associativity
// (Light's test over a greedy generating set, so order-4096 tables stay cheap).
class FiniteGroup {
public:
    int order() const { return n_; }
    int mul(int a, int b) const { return t_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }
    int element_order(int a) const { return ord_[a]; }
    const std::vector<int>& order_profile() const { return ord_; }

    std::vector<std::vector<int>> table_rows() const;
    const std::vector<int>& flat_table() const { return t_; }

    static GroupPtr make(const std::vector<std::vector<int>>& rows);

private:
    int n_ = 0;
    std::vector<int> t_;
    std::vector<int> inv_;
    std::vector<int> ord_;
};

struct Subgroup {
    GroupPtr parent;
    std::vector<int> elems;   // ascending, always contains 0
    std::vector<char> member; // mask over the parent
    int order() const { return (int)elems.size(); }
    bool contains(int x) const { return member[x] != 0; }
};

// Validates closure under the parent product (enough for a finite subgroup).
Subgroup make_subgroup(GroupPtr G, const std::vector<int>& elems);
Subgroup subgroup_closure(GroupPtr G, const std::vector<int>& gens);
Subgroup intersect(const Subgroup& A, const Subgroup& B);

// Greedy generating set: repeatedly adjoin the smallest element outside the
// closure so far. Deterministic; also drives Light's test and iso search.
std::vector<int> greedy_generators(const FiniteGroup& G);

struct CosetSpace {
    Subgroup sub;
    std::vector<int> reps;     // minimal element of each left coset, ascending
    std::vector<int> coset_of; // element -> coset index
    int count() const { return (int)reps.size(); }
};
CosetSpace left_cosets(GroupPtr G, const Subgroup& H);

Subgroup normal_core(GroupPtr G, const Subgroup& H);
std::vector<std::vector<int>> conjugacy_classes(GroupPtr G);
Subgroup centralizer(GroupPtr G, int g);
bool is_normal(GroupPtr G, const Subgroup& H);

// All subgroups, deduplicated, sorted by (order, elements). Capped.
std::vector<Subgroup> all_subgroups(GroupPtr G);
// Complete list of subgroups of order exactly m; no cap on |G|. The search
// only ever walks subgroups whose order divides m, so it stays feasible on
// holomorphs far above the all_subgroups cap.
std::vector<Subgroup> subgroups_of_order(GroupPtr G, int m);

std::vector<Perm> automorphisms(GroupPtr G);
std::optional<Perm> are_isomorphic(GroupPtr G1, GroupPtr G2);

struct GroupAction {
    GroupPtr group;
    int degree = 0;
    std::vector<Perm> perm_of;
    int apply(int g, int pt) const { return perm_of[g][pt]; }
};
// Checks identity and the morphism law against a generating set; the full
// all-pairs check is quadratic in |G| and infeasible at order 4096.
GroupAction make_action(GroupPtr G, int degree, std::vector<Perm> perms);

struct SemidirectProduct {
    GroupPtr group;
    int n_order = 0;
    int h_order = 0;
    int code(int a, int b) const { return a * h_order + b; }
    std::pair<int, int> decode(int g) const { return {g / h_order, g % h_order}; }
};
// (a,b)(a',b') = (a n-times act_b(a'), b b'); every act_b must be an
// automorphism of N.
SemidirectProduct semidirect_product(GroupPtr N, GroupPtr H, const GroupAction& act);

struct Holomorph {
    GroupPtr base;
    GroupPtr aut_group;     // automorphism group, identity at 0
    std::vector<Perm> auts; // element i of aut_group acts as auts[i]
    SemidirectProduct sd;   // base x| aut_group
    GroupAction evaluation; // (v,M) sends w to v*M(w)
};
Holomorph holomorph(GroupPtr A);

std::vector<int> orbit_of(const GroupAction& act, int pt);
Subgroup stabilizer_of(const GroupAction& act, int pt);
std::vector<std::vector<int>> action_orbits(const GroupAction& act);

} // namespace brachyon
