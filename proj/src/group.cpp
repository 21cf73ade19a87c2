#include "group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace brachyon {

namespace {

std::string cell(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}
std::string triple(int a, int b, int c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

// Closure of a set under the binary operation alone. No associativity is
// assumed, which lets Light's test use it before the table is trusted.
std::vector<char> magma_closure(const std::vector<int>& t, int n,
                                std::vector<char> member, int size_cap = -1) {
    std::vector<int> work;
    for (int i = 0; i < n; ++i)
        if (member[i]) work.push_back(i);
    std::vector<int> have = work;
    size_t head = 0;
    while (head < work.size()) {
        int x = work[head++];
        size_t m = have.size();
        for (size_t k = 0; k < m; ++k) {
            int y = have[k];
            for (int p : {t[x * n + y], t[y * n + x]}) {
                if (!member[p]) {
                    member[p] = 1;
                    work.push_back(p);
                    have.push_back(p);
                    if (size_cap >= 0 && (int)have.size() > size_cap) return member;
                }
            }
        }
    }
    return member;
}

} // namespace

std::vector<std::vector<int>> FiniteGroup::table_rows() const {
    std::vector<std::vector<int>> rows(n_);
    for (int a = 0; a < n_; ++a)
        rows[a].assign(t_.begin() + a * n_, t_.begin() + (a + 1) * n_);
    return rows;
}

GroupPtr FiniteGroup::make(const std::vector<std::vector<int>>& rows) {
    int n = (int)rows.size();
    require(n > 0, errc::bad_input, "empty table");
    std::vector<int> t;
    t.reserve((size_t)n * n);
    for (int a = 0; a < n; ++a) {
        require((int)rows[a].size() == n, errc::bad_input,
                "table is not square at row " + std::to_string(a));
        for (int b = 0; b < n; ++b) {
            int v = rows[a][b];
            require(v >= 0 && v < n, errc::bad_input,
                    "entry out of range at cell " + cell(a, b));
            t.push_back(v);
        }
    }

    for (int b = 0; b < n; ++b)
        require(t[b] == b, errc::no_identity_at_zero,
                "row 0 is not the identity at cell " + cell(0, b));
    for (int a = 0; a < n; ++a)
        require(t[a * n] == a, errc::no_identity_at_zero,
                "column 0 is not the identity at cell " + cell(a, 0));

    std::vector<int> seen(n);
    for (int a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), -1);
        for (int b = 0; b < n; ++b) {
            int v = t[a * n + b];
            require(seen[v] < 0, errc::not_latin,
                    "row " + std::to_string(a) + " repeats value " + std::to_string(v) +
                        " at cell " + cell(a, b));
            seen[v] = b;
        }
    }
    for (int b = 0; b < n; ++b) {
        std::fill(seen.begin(), seen.end(), -1);
        for (int a = 0; a < n; ++a) {
            int v = t[a * n + b];
            require(seen[v] < 0, errc::not_latin,
                    "column " + std::to_string(b) + " repeats value " + std::to_string(v) +
                        " at cell " + cell(a, b));
            seen[v] = a;
        }
    }

    // Light's associativity test: it suffices to check a(gy)=(ag)y for g in a
    // set whose magma closure is everything, because the elements g satisfying
    // that law for all a,y form a closed subset containing the identity.
    {
        std::vector<char> closed(n, 0);
        closed[0] = 1;
        int missing = n - 1;
        std::vector<int> gens;
        for (int g = 1; g < n && missing > 0; ++g) {
            if (closed[g]) continue;
            gens.push_back(g);
            closed[g] = 1;
            std::vector<char> next = magma_closure(t, n, closed);
            missing = 0;
            for (int i = 0; i < n; ++i) {
                if (!next[i]) ++missing;
            }
            closed = std::move(next);
        }
        for (int g : gens) {
            const int* gr = &t[g * n];
            for (int a = 0; a < n; ++a) {
                int ag = t[a * n + g];
                const int* ar = &t[a * n];
                const int* agr = &t[ag * n];
                for (int y = 0; y < n; ++y) {
                    if (ar[gr[y]] != agr[y])
                        fail(errc::not_associative,
                             "associativity fails at triple " + triple(a, g, y));
                }
            }
        }
    }

    auto G = std::make_shared<FiniteGroup>();
    G->n_ = n;
    G->t_ = std::move(t);
    G->inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (G->t_[a * n + b] == 0) {
                G->inv_[a] = b;
                break;
            }
        }
        require(G->t_[G->inv_[a] * n + a] == 0, errc::internal, "one-sided inverse");
    }
    G->ord_.assign(n, 1);
    for (int a = 0; a < n; ++a) {
        int x = a, k = 1;
        while (x != 0) {
            x = G->t_[x * n + a];
            ++k;
        }
        G->ord_[a] = k == 1 ? 1 : k;
    }
    G->ord_[0] = 1;
    return G;
}

Subgroup make_subgroup(GroupPtr G, const std::vector<int>& elems) {
    int n = G->order();
    Subgroup H;
    H.parent = G;
    H.member.assign(n, 0);
    for (int x : elems) {
        require(x >= 0 && x < n, errc::bad_input, "subgroup element out of range");
        H.member[x] = 1;
    }
    require(H.member[0], errc::not_a_subgroup, "subgroup must contain the identity");
    for (int i = 0; i < n; ++i)
        if (H.member[i]) H.elems.push_back(i);
    for (int a : H.elems)
        for (int b : H.elems)
            require(H.member[G->mul(a, b)], errc::not_a_subgroup,
                    "not closed: product of " + std::to_string(a) + " and " +
                        std::to_string(b) + " escapes");
    return H;
}

Subgroup subgroup_closure(GroupPtr G, const std::vector<int>& gens) {
    int n = G->order();
    std::vector<char> member(n, 0);
    member[0] = 1;
    for (int g : gens) {
        require(g >= 0 && g < n, errc::bad_input, "generator out of range");
        member[g] = 1;
    }
    member = magma_closure(G->flat_table(), n, std::move(member));
    Subgroup H;
    H.parent = G;
    H.member = std::move(member);
    for (int i = 0; i < n; ++i)
        if (H.member[i]) H.elems.push_back(i);
    return H;
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
    Subgroup H;
    H.parent = A.parent;
    H.member.assign(A.member.size(), 0);
    for (size_t i = 0; i < A.member.size(); ++i) {
        if (A.member[i] && B.member[i]) {
            H.member[i] = 1;
            H.elems.push_back((int)i);
        }
    }
    return H;
}

std::vector<int> greedy_generators(const FiniteGroup& G) {
    int n = G.order();
    std::vector<char> closed(n, 0);
    closed[0] = 1;
    std::vector<int> gens;
    for (int g = 1; g < n; ++g) {
        if (closed[g]) continue;
        gens.push_back(g);
        closed[g] = 1;
        closed = magma_closure(G.flat_table(), n, std::move(closed));
    }
    return gens;
}

CosetSpace left_cosets(GroupPtr G, const Subgroup& H) {
    int n = G->order();
    CosetSpace cs;
    cs.sub = H;
    cs.coset_of.assign(n, -1);
    for (int g = 0; g < n; ++g) {
        if (cs.coset_of[g] >= 0) continue;
        int idx = (int)cs.reps.size();
        cs.reps.push_back(g); // g is minimal in its coset: smaller ones are taken
        for (int h : H.elems) cs.coset_of[G->mul(g, h)] = idx;
    }
    return cs;
}

Subgroup normal_core(GroupPtr G, const Subgroup& H) {
    int n = G->order();
    std::vector<int> elems;
    std::vector<char> member(n, 0);
    for (int x : H.elems) {
        bool keep = true;
        for (int g = 0; g < n && keep; ++g)
            keep = H.contains(G->mul(G->mul(G->inv(g), x), g));
        if (keep) {
            member[x] = 1;
            elems.push_back(x);
        }
    }
    Subgroup C;
    C.parent = G;
    C.elems = std::move(elems);
    C.member = std::move(member);
    require(is_normal(G, C), errc::internal, "core is not normal");
    return C;
}

std::vector<std::vector<int>> conjugacy_classes(GroupPtr G) {
    int n = G->order();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> classes;
    for (int x = 0; x < n; ++x) {
        if (seen[x]) continue;
        std::set<int> cls;
        for (int g = 0; g < n; ++g) cls.insert(G->conj(g, x));
        std::vector<int> v(cls.begin(), cls.end());
        for (int y : v) seen[y] = 1;
        classes.push_back(std::move(v));
    }
    return classes;
}

Subgroup centralizer(GroupPtr G, int g) {
    require(g >= 0 && g < G->order(), errc::bad_input, "element out of range");
    std::vector<int> elems;
    for (int x = 0; x < G->order(); ++x)
        if (G->mul(x, g) == G->mul(g, x)) elems.push_back(x);
    return make_subgroup(G, elems);
}

bool is_normal(GroupPtr G, const Subgroup& H) {
    for (int g = 0; g < G->order(); ++g)
        for (int h : H.elems)
            if (!H.contains(G->conj(g, h))) return false;
    return true;
}

namespace {

Subgroup from_mask(GroupPtr G, std::vector<char> member) {
    Subgroup H;
    H.parent = G;
    for (size_t i = 0; i < member.size(); ++i)
        if (member[i]) H.elems.push_back((int)i);
    H.member = std::move(member);
    return H;
}

// BFS over the subgroup lattice: adjoin one element at a time and close.
// order_divides (when > 0) prunes to subgroups whose order divides it, which
// by Lagrange keeps every subgroup of a target of that order reachable.
std::vector<Subgroup> subgroup_search(GroupPtr G, int order_divides) {
    int n = G->order();
    std::vector<int> candidates;
    for (int g = 0; g < n; ++g) {
        if (order_divides > 0 && order_divides % G->element_order(g) != 0) continue;
        candidates.push_back(g);
    }
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    std::vector<size_t> queue;
    Subgroup triv = from_mask(G, [&] {
        std::vector<char> m(n, 0);
        m[0] = 1;
        return m;
    }());
    seen.insert(triv.elems);
    out.push_back(triv);
    queue.push_back(0);
    for (size_t head = 0; head < queue.size(); ++head) {
        Subgroup S = out[queue[head]]; // copy: out may reallocate
        for (int g : candidates) {
            if (S.contains(g)) continue;
            std::vector<char> m = S.member;
            m[g] = 1;
            m = magma_closure(G->flat_table(), n, std::move(m),
                              order_divides > 0 ? order_divides : -1);
            int sz = 0;
            for (char c : m)
                if (c) ++sz;
            if (order_divides > 0 && (sz > order_divides || order_divides % sz != 0))
                continue;
            Subgroup T = from_mask(G, std::move(m));
            if (seen.insert(T.elems).second) {
                out.push_back(T);
                queue.push_back(out.size() - 1);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
        return a.elems < b.elems;
    });
    return out;
}

} // namespace

std::vector<Subgroup> all_subgroups(GroupPtr G) {
    require(G->order() <= caps().all_subgroups, errc::order_cap_exceeded,
            "all_subgroups: order " + std::to_string(G->order()) + " exceeds cap " +
                std::to_string(caps().all_subgroups));
    return subgroup_search(G, 0);
}

std::vector<Subgroup> subgroups_of_order(GroupPtr G, int m) {
    require(m >= 1, errc::bad_input, "order must be positive");
    if (G->order() % m != 0) return {};
    std::vector<Subgroup> all = subgroup_search(G, m);
    std::vector<Subgroup> out;
    for (auto& S : all)
        if (S.order() == m) out.push_back(std::move(S));
    return out;
}

namespace {

// Backtracking isomorphism search. Generator images are propagated through
// the multiplication tables immediately, so each branch either forces the
// whole map or dies early; candidate images are filtered by (element order,
// conjugacy class size) fingerprints.
struct IsoSearch {
    const FiniteGroup& G;
    const FiniteGroup& H;
    int n;
    std::vector<int> gens;
    std::vector<std::pair<int, int>> gkey, hkey;
    std::vector<int> img, pre;
    std::vector<int> known;
    bool collect_all;
    std::vector<Perm> found;

    IsoSearch(const FiniteGroup& g, const FiniteGroup& h, bool all)
        : G(g), H(h), n(g.order()), collect_all(all) {}

    static std::vector<std::pair<int, int>> keys(const FiniteGroup& G, GroupPtr holder) {
        std::vector<std::pair<int, int>> k(G.order());
        auto classes = conjugacy_classes(holder);
        for (auto& cls : classes)
            for (int x : cls) k[x] = {G.element_order(x), (int)cls.size()};
        return k;
    }

    bool assign(int x, int y, std::vector<int>& log) {
        if (img[x] >= 0) return img[x] == y;
        if (pre[y] >= 0) return false;
        img[x] = y;
        pre[y] = x;
        log.push_back(x);
        size_t start = known.size();
        known.push_back(x);
        for (size_t i = start; i < known.size(); ++i) {
            int a = known[i];
            for (size_t j = 0; j < known.size(); ++j) {
                int b = known[j];
                int p1 = G.mul(a, b), q1 = H.mul(img[a], img[b]);
                int p2 = G.mul(b, a), q2 = H.mul(img[b], img[a]);
                for (auto [p, q] : {std::pair{p1, q1}, std::pair{p2, q2}}) {
                    if (img[p] >= 0) {
                        if (img[p] != q) return false;
                    } else {
                        if (pre[q] >= 0) return false;
                        img[p] = q;
                        pre[q] = p;
                        log.push_back(p);
                        known.push_back(p);
                    }
                }
            }
        }
        return true;
    }

    void undo(const std::vector<int>& log) {
        for (auto it = log.rbegin(); it != log.rend(); ++it) {
            pre[img[*it]] = -1;
            img[*it] = -1;
            known.pop_back();
        }
    }

    bool search(size_t level) {
        if (level == gens.size()) {
            if ((int)known.size() != n) return false; // generators must span
            found.push_back(img);
            return !collect_all;
        }
        int g = gens[level];
        if (img[g] >= 0) return search(level + 1); // forced by propagation
        for (int c = 0; c < n; ++c) {
            if (pre[c] >= 0 || hkey[c] != gkey[g]) continue;
            std::vector<int> log;
            bool ok = assign(g, c, log);
            if (ok && search(level + 1)) return true;
            undo(log);
        }
        return false;
    }

    std::vector<Perm> run(GroupPtr gp, GroupPtr hp) {
        if (G.order() != H.order()) return {};
        gkey = keys(G, gp);
        hkey = keys(H, hp);
        auto profile = [](std::vector<std::pair<int, int>> k) {
            std::sort(k.begin(), k.end());
            return k;
        };
        if (profile(gkey) != profile(hkey)) return {};
        gens = greedy_generators(G);
        img.assign(n, -1);
        pre.assign(n, -1);
        std::vector<int> log;
        if (!assign(0, 0, log)) return {};
        search(0);
        std::sort(found.begin(), found.end());
        return found;
    }
};

} // namespace

std::vector<Perm> automorphisms(GroupPtr G) {
    require(G->order() <= caps().automorphisms, errc::order_cap_exceeded,
            "automorphisms: order " + std::to_string(G->order()) + " exceeds cap " +
                std::to_string(caps().automorphisms));
    IsoSearch s(*G, *G, true);
    auto res = s.run(G, G);
    require(!res.empty(), errc::internal, "automorphism group came out empty");
    return res;
}

std::optional<Perm> are_isomorphic(GroupPtr G1, GroupPtr G2) {
    int m = std::max(G1->order(), G2->order());
    require(m <= caps().isomorphism, errc::order_cap_exceeded,
            "are_isomorphic: order " + std::to_string(m) + " exceeds cap " +
                std::to_string(caps().isomorphism));
    IsoSearch s(*G1, *G2, false);
    auto res = s.run(G1, G2);
    if (res.empty()) return std::nullopt;
    return res.front();
}

GroupAction make_action(GroupPtr G, int degree, std::vector<Perm> perms) {
    require(degree > 0, errc::bad_input, "action degree must be positive");
    require((int)perms.size() == G->order(), errc::bad_input,
            "need one permutation per group element");
    for (auto& p : perms)
        require((int)p.size() == degree && is_permutation(p), errc::bad_input,
                "action images must be permutations of the point set");
    require(perms[0] == perm_identity(degree), errc::bad_input,
            "identity must act trivially");
    GroupAction act;
    act.group = G;
    act.degree = degree;
    act.perm_of = std::move(perms);
    auto gens = greedy_generators(*G);
    for (int g = 0; g < G->order(); ++g)
        for (int s : gens)
            require(act.perm_of[G->mul(g, s)] == perm_compose(act.perm_of[g], act.perm_of[s]),
                    errc::bad_input, "action is not a morphism (fails at generator pair)");
    return act;
}

SemidirectProduct semidirect_product(GroupPtr N, GroupPtr H, const GroupAction& act) {
    require(act.group.get() == H.get(), errc::bad_input,
            "action must be an action of the acting factor");
    require(act.degree == N->order(), errc::bad_input,
            "action degree must match the normal factor");
    int nn = N->order(), nh = H->order();
    for (int b = 0; b < nh; ++b) {
        const Perm& p = act.perm_of[b];
        for (int x = 0; x < nn; ++x)
            for (int y = 0; y < nn; ++y)
                if (p[N->mul(x, y)] != N->mul(p[x], p[y]))
                    fail(errc::not_automorphism_action,
                         "element " + std::to_string(b) +
                             " does not act as an automorphism (fails at " + cell(x, y) + ")");
    }
    int n = nn * nh;
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int a = 0; a < nn; ++a)
        for (int b = 0; b < nh; ++b) {
            int g = a * nh + b;
            const Perm& p = act.perm_of[b];
            for (int a2 = 0; a2 < nn; ++a2)
                for (int b2 = 0; b2 < nh; ++b2)
                    rows[g][a2 * nh + b2] = N->mul(a, p[a2]) * nh + H->mul(b, b2);
        }
    SemidirectProduct sd;
    sd.group = FiniteGroup::make(rows);
    sd.n_order = nn;
    sd.h_order = nh;
    return sd;
}

Holomorph holomorph(GroupPtr A) {
    Holomorph hol;
    hol.base = A;
    hol.auts = automorphisms(A);
    int m = (int)hol.auts.size();
    std::map<Perm, int> index;
    for (int i = 0; i < m; ++i) index[hol.auts[i]] = i;
    std::vector<std::vector<int>> rows(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rows[i][j] = index.at(perm_compose(hol.auts[i], hol.auts[j]));
    hol.aut_group = FiniteGroup::make(rows);
    GroupAction natural = make_action(hol.aut_group, A->order(), hol.auts);
    hol.sd = semidirect_product(A, hol.aut_group, natural);

    std::vector<Perm> ev(hol.sd.group->order());
    for (int g = 0; g < hol.sd.group->order(); ++g) {
        auto [v, Mi] = hol.sd.decode(g);
        Perm p(A->order());
        for (int w = 0; w < A->order(); ++w) p[w] = A->mul(v, hol.auts[Mi][w]);
        ev[g] = std::move(p);
    }
    hol.evaluation = make_action(hol.sd.group, A->order(), std::move(ev));
    return hol;
}

std::vector<int> orbit_of(const GroupAction& act, int pt) {
    require(pt >= 0 && pt < act.degree, errc::bad_input, "point out of range");
    std::vector<char> in(act.degree, 0);
    for (const auto& p : act.perm_of) in[p[pt]] = 1;
    std::vector<int> orb;
    for (int i = 0; i < act.degree; ++i)
        if (in[i]) orb.push_back(i);
    return orb;
}

Subgroup stabilizer_of(const GroupAction& act, int pt) {
    require(pt >= 0 && pt < act.degree, errc::bad_input, "point out of range");
    std::vector<int> elems;
    for (int g = 0; g < act.group->order(); ++g)
        if (act.perm_of[g][pt] == pt) elems.push_back(g);
    Subgroup H;
    H.parent = act.group;
    H.elems = std::move(elems);
    H.member.assign(act.group->order(), 0);
    for (int x : H.elems) H.member[x] = 1;
    return H;
}

std::vector<std::vector<int>> action_orbits(const GroupAction& act) {
    std::vector<char> seen(act.degree, 0);
    std::vector<std::vector<int>> orbs;
    for (int pt = 0; pt < act.degree; ++pt) {
        if (seen[pt]) continue;
        auto orb = orbit_of(act, pt);
        for (int x : orb) seen[x] = 1;
        orbs.push_back(std::move(orb));
    }
    return orbs;
}

} // namespace brachyon
