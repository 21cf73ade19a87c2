#include "brace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace brachyon {

namespace {

std::string triple(int a, int b, int c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

} // namespace

BracePtr SkewBrace::make(const std::vector<std::vector<int>>& star_rows,
                         const std::vector<std::vector<int>>& dot_rows) {
    GroupPtr star, dot;
    try {
        star = FiniteGroup::make(star_rows);
    } catch (const Error& e) {
        fail(errc::star_invalid, std::string("additive table: ") + e.what());
    }
    try {
        dot = FiniteGroup::make(dot_rows);
    } catch (const Error& e) {
        fail(errc::dot_invalid, std::string("multiplicative table: ") + e.what());
    }
    require(star->order() == dot->order(), errc::bad_input,
            "tables have different sizes");
    int n = star->order();

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int lhs = dot->mul(a, star->mul(b, c));
                int rhs = star->mul(star->mul(dot->mul(a, b), star->inv(a)),
                                    dot->mul(a, c));
                if (lhs != rhs)
                    fail(errc::axiom_fails,
                         "compatibility fails at triple " + triple(a, b, c));
            }

    auto B = std::make_shared<SkewBrace>();
    B->n_ = n;
    B->star_ = star;
    B->dot_ = dot;
    B->lam_.resize((size_t)n * n);
    B->lam_inv_.resize((size_t)n * n);
    B->gam_.resize((size_t)n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            B->lam_[a * n + b] = star->mul(star->inv(a), dot->mul(a, b));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) B->lam_inv_[a * n + B->lam_[a * n + b]] = b;
    }
    for (int b = 0; b < n; ++b) {
        int bi = dot->inv(b);
        for (int a = 0; a < n; ++a)
            B->gam_[b * n + a] =
                dot->inv(star->mul(dot->mul(bi, dot->inv(a)), star->inv(bi)));
    }

    // Sanity laws implied by the axiom; violations mean an internal bug.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = dot->mul(a, b);
            for (int c = 0; c < n; ++c)
                require(B->lam_[ab * n + c] == B->lam_[a * n + B->lam_[b * n + c]],
                        errc::internal, "lambda is not a morphism");
            require(dot->mul(a, b) ==
                        dot->mul(B->lam_[a * n + b], B->gam_[b * n + a]),
                    errc::internal, "lambda/gamma factorization fails");
        }
    for (int a = 0; a < n; ++a)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                require(B->lam_[a * n + star->mul(x, y)] ==
                            star->mul(B->lam_[a * n + x], B->lam_[a * n + y]),
                        errc::internal, "lambda is not a star automorphism");

    B->star_abelian_ = true;
    for (int a = 0; a < n && B->star_abelian_; ++a)
        for (int b = a + 1; b < n; ++b)
            if (star->mul(a, b) != star->mul(b, a)) {
                B->star_abelian_ = false;
                break;
            }
    return B;
}

std::optional<std::array<int, 3>> two_sided_violation(const BracePtr& B) {
    int n = B->order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int lhs = B->dot(B->star(b, c), a);
                int rhs = B->star(B->star(B->dot(b, a), B->star_inv(a)), B->dot(c, a));
                if (lhs != rhs) return std::array<int, 3>{b, c, a};
            }
    return std::nullopt;
}

GroupAction lambda_action(const BracePtr& B) {
    int n = B->order();
    std::vector<Perm> perms(n);
    for (int a = 0; a < n; ++a) {
        Perm p(n);
        for (int b = 0; b < n; ++b) p[b] = B->lambda(a, b);
        perms[a] = std::move(p);
    }
    return make_action(B->dot_group(), n, std::move(perms));
}

Subgroup socle(const BracePtr& B) {
    int n = B->order();
    std::vector<int> soc;
    for (int a = 0; a < n; ++a) {
        bool lam_id = true;
        for (int b = 0; b < n && lam_id; ++b) lam_id = B->lambda(a, b) == b;
        if (!lam_id) continue;
        bool central = true;
        for (int x = 0; x < n && central; ++x)
            central = B->star(B->star(x, a), B->star_inv(x)) == a;
        if (central) soc.push_back(a);
    }

    std::vector<int> ker1, ker2;
    for (int a = 0; a < n; ++a) {
        bool lam_id = true, gam_id = true, h_id = true;
        for (int b = 0; b < n; ++b) {
            if (B->lambda(a, b) != b) lam_id = false;
            if (B->gamma(a, b) != b) gam_id = false;
            if (B->star(B->star(a, B->lambda(a, b)), B->star_inv(a)) != b) h_id = false;
        }
        if (lam_id && gam_id) ker1.push_back(a);
        if (lam_id && h_id) ker2.push_back(a);
    }
    require(soc == ker1, errc::internal,
            "socle disagrees with the (lambda,gamma) kernel");
    require(soc == ker2, errc::internal,
            "socle disagrees with the (lambda,h) kernel");
    require(is_ideal(B, soc), errc::internal, "socle is not an ideal");
    return make_subgroup(B->star_group(), soc);
}

bool is_left_ideal(const BracePtr& B, const std::vector<int>& elems) {
    std::vector<char> in(B->order(), 0);
    for (int x : elems) {
        if (x < 0 || x >= B->order()) return false;
        in[x] = 1;
    }
    if (!in[0]) return false;
    for (int a : elems)
        for (int b : elems)
            if (!in[B->star(a, b)]) return false;
    for (int a = 0; a < B->order(); ++a)
        for (int x : elems)
            if (!in[B->lambda(a, x)]) return false;
    return true;
}

bool is_ideal(const BracePtr& B, const std::vector<int>& elems) {
    if (!is_left_ideal(B, elems)) return false;
    std::vector<char> in(B->order(), 0);
    for (int x : elems) in[x] = 1;
    for (int a : elems)
        for (int b : elems)
            if (!in[B->dot(a, b)]) return false;
    for (int g = 0; g < B->order(); ++g)
        for (int x : elems) {
            if (!in[B->star(B->star(g, x), B->star_inv(g))]) return false;
            if (!in[B->dot(B->dot(g, x), B->dot_inv(g))]) return false;
        }
    return true;
}

BracePtr quotient_brace(const BracePtr& B, const std::vector<int>& ideal_elems) {
    require(is_ideal(B, ideal_elems), errc::not_an_ideal,
            "the given subset is not an ideal");
    Subgroup I = make_subgroup(B->star_group(), ideal_elems);
    CosetSpace cs = left_cosets(B->star_group(), I);
    int m = cs.count();
    std::vector<std::vector<int>> star_q(m, std::vector<int>(m));
    std::vector<std::vector<int>> dot_q(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            star_q[i][j] = cs.coset_of[B->star(cs.reps[i], cs.reps[j])];
            dot_q[i][j] = cs.coset_of[B->dot(cs.reps[i], cs.reps[j])];
        }
    return SkewBrace::make(star_q, dot_q);
}

std::vector<int> square_free_elements(const BracePtr& B) {
    std::vector<int> out;
    for (int a = 0; a < B->order(); ++a)
        if (B->lambda(a, a) == a) out.push_back(a);
    return out;
}

BracePtr trivial_brace(GroupPtr G) {
    auto rows = G->table_rows();
    return SkewBrace::make(rows, rows);
}

BracePtr opposite_brace(GroupPtr G) {
    auto dot = G->table_rows();
    auto star = dot;
    for (int a = 0; a < G->order(); ++a)
        for (int b = 0; b < G->order(); ++b) star[a][b] = dot[b][a];
    return SkewBrace::make(star, dot);
}

BracePtr cyclic_flip_brace(int n) {
    require(n >= 1, errc::bad_input, "need n >= 1");
    int m = 2 * n;
    std::vector<std::vector<int>> star(m, std::vector<int>(m));
    std::vector<std::vector<int>> dot(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            star[a][b] = (b % 2 == 0 ? a + b : m - a + b) % m;
            dot[a][b] = (a + b) % m;
        }
    return SkewBrace::make(star, dot);
}

BracePtr order21_brace() {
    // carrier Z/7 x Z/3 coded a*3+b; star twists by powers of 2, dot by 4,
    // so t.s = s^2.t additively while t.s = s^4.t multiplicatively
    auto build = [](int w) {
        std::vector<std::vector<int>> t(21, std::vector<int>(21));
        for (int p = 0; p < 21; ++p)
            for (int q = 0; q < 21; ++q) {
                int a = p / 3, b = p % 3, i = q / 3, j = q % 3;
                int wb = 1;
                for (int k = 0; k < b; ++k) wb = wb * w % 7;
                t[p][q] = ((a + wb * i) % 7) * 3 + (b + j) % 3;
            }
        return t;
    };
    return SkewBrace::make(build(2), build(4));
}

BracePtr vendramin_brace() {
    // (Z/2)^6 with y_k = bit k-1; star is xor, dot(a,b) = a xor lambda_a(b)
    int n = 64;
    auto lam = [](int y, int z) {
        int y1 = y & 1, y2 = (y >> 1) & 1, y3 = (y >> 2) & 1;
        int y4 = (y >> 3) & 1, y5 = (y >> 4) & 1, y6 = (y >> 5) & 1;
        int C = y1 ^ y2 ^ (y2 & y3);
        int A = y4 ^ y5 ^ (y5 & y6);
        int Bc = y2 ^ (y3 & A);
        int z1 = z & 1, z2 = (z >> 1) & 1, z3 = (z >> 2) & 1;
        int z4 = (z >> 3) & 1, z5 = (z >> 4) & 1, z6 = (z >> 5) & 1;
        int w1 = z1 ^ (y3 & z2) ^ (Bc & z3);
        int w2 = z2 ^ (A & z3);
        int w3 = z3;
        int w4 = z4 ^ (y6 & z5) ^ ((y5 ^ (y6 & C)) & z6);
        int w5 = z5 ^ (C & z6);
        int w6 = z6;
        return w1 | (w2 << 1) | (w3 << 2) | (w4 << 3) | (w5 << 4) | (w6 << 5);
    };
    std::vector<std::vector<int>> star(n, std::vector<int>(n));
    std::vector<std::vector<int>> dot(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            star[a][b] = a ^ b;
            dot[a][b] = a ^ lam(a, b);
        }
    return SkewBrace::make(star, dot);
}

BracePtr brace_from_regular_subgroup(const Holomorph& hol, const Subgroup& H) {
    GroupPtr A = hol.base;
    int n = A->order();
    require(H.parent.get() == hol.sd.group.get(), errc::bad_input,
            "subgroup must live in the holomorph");
    require(H.order() == n, errc::not_regular,
            "subgroup order " + std::to_string(H.order()) + " differs from the base order");

    // first characterization: projection to the base is a bijection
    std::vector<int> h_of(n, -1);
    for (int h : H.elems) {
        int v = hol.sd.decode(h).first;
        if (h_of[v] >= 0) fail(errc::not_regular, "projection to the base is not injective");
        h_of[v] = h;
    }
    for (int v = 0; v < n; ++v)
        if (h_of[v] < 0) fail(errc::not_regular, "projection to the base misses an element");

    // second characterization: each point is sent to the identity exactly once
    std::vector<int> hits(n, 0);
    for (int h : H.elems) {
        auto [v, Mi] = hol.sd.decode(h);
        int w = perm_inverse(hol.auts[Mi])[A->inv(v)];
        hits[w] += 1;
    }
    for (int w = 0; w < n; ++w)
        require(hits[w] == 1, errc::not_regular,
                "point " + std::to_string(w) + " reaches the identity " +
                    std::to_string(hits[w]) + " times");

    auto star_rows = A->table_rows();
    std::vector<std::vector<int>> dot_rows(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
        auto [v, Mi] = hol.sd.decode(h_of[a]);
        for (int b = 0; b < n; ++b) dot_rows[a][b] = A->mul(a, hol.auts[Mi][b]);
    }
    BracePtr B = SkewBrace::make(star_rows, dot_rows);

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            require(h_of[B->dot(a, b)] == hol.sd.group->mul(h_of[a], h_of[b]),
                    errc::internal,
                    "multiplicative group does not match the subgroup");
    return B;
}

std::vector<BracePtr> enumerate_braces_on(GroupPtr A) {
    require(A->order() <= caps().enumerate_braces, errc::order_cap_exceeded,
            "enumerate_braces_on: order " + std::to_string(A->order()) +
                " exceeds cap " + std::to_string(caps().enumerate_braces));
    Holomorph hol = holomorph(A);
    std::vector<Subgroup> regular;
    for (auto& S : subgroups_of_order(hol.sd.group, A->order())) {
        bool ok = true;
        std::vector<char> seen(A->order(), 0);
        for (int h : S.elems) {
            int v = hol.sd.decode(h).first;
            if (seen[v]) {
                ok = false;
                break;
            }
            seen[v] = 1;
        }
        if (ok) regular.push_back(std::move(S));
    }

    std::vector<BracePtr> braces;
    for (auto& S : regular) braces.push_back(brace_from_regular_subgroup(hol, S));

    // dedupe path 1: pairwise brace isomorphism
    std::vector<int> iso_class(braces.size(), -1);
    std::vector<int> reps;
    for (size_t i = 0; i < braces.size(); ++i) {
        for (size_t k = 0; k < reps.size(); ++k)
            if (brace_isomorphism(braces[reps[k]], braces[i])) {
                iso_class[i] = (int)k;
                break;
            }
        if (iso_class[i] < 0) {
            iso_class[i] = (int)reps.size();
            reps.push_back((int)i);
        }
    }

    // dedupe path 2: orbits of Aut(A) acting on regular subgroups by conjugation
    std::map<std::vector<int>, size_t> index_of;
    for (size_t i = 0; i < regular.size(); ++i) index_of[regular[i].elems] = i;
    std::vector<int> orbit_class(regular.size(), -1);
    int orbit_count = 0;
    GroupPtr G = hol.sd.group;
    for (size_t i = 0; i < regular.size(); ++i) {
        if (orbit_class[i] >= 0) continue;
        int id = orbit_count++;
        std::vector<size_t> stack{i};
        orbit_class[i] = id;
        while (!stack.empty()) {
            size_t cur = stack.back();
            stack.pop_back();
            for (size_t m = 0; m < hol.auts.size(); ++m) {
                int u = hol.sd.code(0, (int)m);
                std::vector<int> conj;
                for (int h : regular[cur].elems)
                    conj.push_back(G->mul(G->mul(u, h), G->inv(u)));
                std::sort(conj.begin(), conj.end());
                size_t j = index_of.at(conj); // conjugates of regular are regular
                if (orbit_class[j] < 0) {
                    orbit_class[j] = id;
                    stack.push_back(j);
                }
            }
        }
    }

    // the two partitions must agree exactly
    require(orbit_count == (int)reps.size(), errc::internal,
            "iso classes and holomorph conjugacy orbits disagree in number");
    std::map<int, int> pairing;
    for (size_t i = 0; i < braces.size(); ++i) {
        auto it = pairing.emplace(orbit_class[i], iso_class[i]).first;
        require(it->second == iso_class[i], errc::internal,
                "iso classes and holomorph conjugacy orbits partition differently");
    }

    std::vector<BracePtr> out;
    for (int r : reps) out.push_back(braces[r]);
    std::sort(out.begin(), out.end(), [](const BracePtr& x, const BracePtr& y) {
        return x->dot_group()->flat_table() < y->dot_group()->flat_table();
    });
    return out;
}

namespace {

// Isomorphism search preserving both tables: propagate generator images
// through the dot table, then confirm the star table at each full leaf.
struct BraceIso {
    const SkewBrace& A;
    const SkewBrace& B;
    int n;
    bool collect_all;
    std::vector<int> gens;
    std::vector<std::pair<int, int>> akey, bkey;
    std::vector<int> img, pre, known;
    std::vector<Perm> found;

    BraceIso(const SkewBrace& a, const SkewBrace& b, bool all)
        : A(a), B(b), n(a.order()), collect_all(all) {}

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
                std::pair<int, int> todo[2] = {
                    {A.dot(a, b), B.dot(img[a], img[b])},
                    {A.dot(b, a), B.dot(img[b], img[a])}};
                for (auto [p, q] : todo) {
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

    bool star_ok() const {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (img[A.star(a, b)] != B.star(img[a], img[b])) return false;
        return true;
    }

    bool search(size_t level) {
        if (level == gens.size()) {
            if ((int)known.size() != n) return false;
            if (!star_ok()) return false;
            found.push_back(img);
            return !collect_all;
        }
        int g = gens[level];
        if (img[g] >= 0) return search(level + 1);
        for (int c = 0; c < n; ++c) {
            if (pre[c] >= 0 || bkey[c] != akey[g]) continue;
            std::vector<int> log;
            bool ok = assign(g, c, log);
            if (ok && search(level + 1)) return true;
            undo(log);
        }
        return false;
    }

    std::vector<Perm> run() {
        if (A.order() != B.order()) return {};
        akey.resize(n);
        bkey.resize(n);
        for (int x = 0; x < n; ++x) {
            akey[x] = {A.star_group()->element_order(x), A.dot_group()->element_order(x)};
            bkey[x] = {B.star_group()->element_order(x), B.dot_group()->element_order(x)};
        }
        auto profile = [](std::vector<std::pair<int, int>> k) {
            std::sort(k.begin(), k.end());
            return k;
        };
        if (profile(akey) != profile(bkey)) return {};
        gens = greedy_generators(*A.dot_group());
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

std::optional<Perm> brace_isomorphism(const BracePtr& B1, const BracePtr& B2) {
    int m = std::max(B1->order(), B2->order());
    require(m <= caps().isomorphism, errc::order_cap_exceeded,
            "brace_isomorphism: order " + std::to_string(m) + " exceeds cap " +
                std::to_string(caps().isomorphism));
    BraceIso s(*B1, *B2, false);
    auto res = s.run();
    if (res.empty()) return std::nullopt;
    return res.front();
}

std::vector<Perm> brace_automorphisms(const BracePtr& B) {
    require(B->order() <= caps().automorphisms, errc::order_cap_exceeded,
            "brace_automorphisms: order " + std::to_string(B->order()) +
                " exceeds cap " + std::to_string(caps().automorphisms));
    BraceIso s(*B, *B, true);
    auto res = s.run();
    require(!res.empty(), errc::internal, "brace automorphism group came out empty");
    return res;
}

} // namespace brachyon
