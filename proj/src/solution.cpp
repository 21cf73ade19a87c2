#include "solution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace brachyon {

void check_solution_shape(const Solution& S) {
    require(S.n > 0, errc::bad_input, "empty solution");
    require((int)S.F.size() == S.n && (int)S.Gt.size() == S.n, errc::bad_input,
            "need n rows in both tables");
    for (const auto& row : S.F) {
        require((int)row.size() == S.n, errc::bad_input, "ragged f table");
        for (int v : row)
            require(v >= 0 && v < S.n, errc::bad_input, "f entry out of range");
    }
    for (const auto& row : S.Gt) {
        require((int)row.size() == S.n, errc::bad_input, "ragged g table");
        for (int v : row)
            require(v >= 0 && v < S.n, errc::bad_input, "g entry out of range");
    }
}

bool r_bijective(const Solution& S) {
    std::vector<char> seen((size_t)S.n * S.n, 0);
    for (int x = 0; x < S.n; ++x)
        for (int y = 0; y < S.n; ++y) {
            int code = S.F[x][y] * S.n + S.Gt[y][x];
            if (seen[code]) return false;
            seen[code] = 1;
        }
    return true;
}

YbeReport verify_ybe(const Solution& S) {
    check_solution_shape(S);
    const auto& F = S.F;
    const auto& G = S.Gt;
    int n = S.n;
    YbeReport rep;
    for (int x = 0; x < n && rep.ok; ++x)
        for (int y = 0; y < n && rep.ok; ++y)
            for (int z = 0; z < n; ++z) {
                int e = 0;
                if (F[F[x][y]][F[G[y][x]][z]] != F[x][F[y][z]])
                    e = 1;
                else if (G[F[G[y][x]][z]][F[x][y]] != F[G[F[y][z]][x]][G[z][y]])
                    e = 2;
                else if (G[z][G[y][x]] != G[G[z][y]][G[F[y][z]][x]])
                    e = 3;
                if (e) {
                    rep = {false, e, x, y, z};
                    break;
                }
            }

    // Independent check: apply r to positions 12 then 23 of a triple and
    // compare the two braid words end to end.
    auto r1 = [&](std::array<int, 3> t) {
        return std::array<int, 3>{F[t[0]][t[1]], G[t[1]][t[0]], t[2]};
    };
    auto r2 = [&](std::array<int, 3> t) {
        return std::array<int, 3>{t[0], F[t[1]][t[2]], G[t[2]][t[1]]};
    };
    bool braid = true;
    for (int x = 0; x < n && braid; ++x)
        for (int y = 0; y < n && braid; ++y)
            for (int z = 0; z < n; ++z) {
                std::array<int, 3> t{x, y, z};
                if (r1(r2(r1(t))) != r2(r1(r2(t)))) {
                    braid = false;
                    break;
                }
            }
    require(braid == rep.ok, errc::internal,
            "component equations disagree with the braid relation");
    return rep;
}

bool is_nondegenerate(const Solution& S) {
    check_solution_shape(S);
    for (int x = 0; x < S.n; ++x)
        if (!is_permutation(S.F[x]) || !is_permutation(S.Gt[x])) return false;
    return true;
}

bool is_involutive(const Solution& S) {
    check_solution_shape(S);
    for (int x = 0; x < S.n; ++x)
        for (int y = 0; y < S.n; ++y) {
            int u = S.F[x][y], v = S.Gt[y][x];
            if (S.F[u][v] != x || S.Gt[v][u] != y) return false;
        }
    return true;
}

bool is_square_free(const Solution& S) {
    check_solution_shape(S);
    for (int x = 0; x < S.n; ++x)
        if (S.F[x][x] != x || S.Gt[x][x] != x) return false;
    return true;
}

std::vector<Perm> gtilde_all(const Solution& S) {
    require(is_nondegenerate(S), errc::nondegenerate_required,
            "gtilde needs bijective f and g maps");
    int n = S.n;
    std::vector<Perm> finv(n);
    for (int y = 0; y < n; ++y) finv[y] = perm_inverse(S.F[y]);
    std::vector<Perm> gt(n, Perm(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) gt[x][y] = S.Gt[finv[y][x]][y];
    for (const auto& p : gt)
        require(is_permutation(p), errc::internal, "gtilde is not bijective");
    return gt;
}

PermutationBrace permutation_brace(const Solution& S) {
    require(is_nondegenerate(S), errc::nondegenerate_required,
            "permutation group needs a non-degenerate solution");
    int n = S.n;
    std::vector<Perm> gt = gtilde_all(S);
    std::vector<std::pair<Perm, Perm>> gens(n);
    for (int x = 0; x < n; ++x) gens[x] = {S.F[x], perm_inverse(gt[x])};

    // right-multiply by generator pairs until closed; identity gets index 0
    std::vector<std::pair<Perm, Perm>> elems{{perm_identity(n), perm_identity(n)}};
    std::map<std::pair<Perm, Perm>, int> index{{elems[0], 0}};
    for (size_t head = 0; head < elems.size(); ++head) {
        for (int x = 0; x < n; ++x) {
            std::pair<Perm, Perm> p{perm_compose(elems[head].first, gens[x].first),
                                    perm_compose(elems[head].second, gens[x].second)};
            if (index.emplace(p, (int)elems.size()).second) elems.push_back(std::move(p));
        }
        require(elems.size() <= 4096, errc::order_cap_exceeded,
                "permutation group exceeds 4096 elements");
    }
    int m = (int)elems.size();
    std::vector<int> gen_of(n);
    for (int x = 0; x < n; ++x) gen_of[x] = index.at(gens[x]);

    std::vector<std::vector<int>> dot(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            dot[i][j] = index.at({perm_compose(elems[i].first, elems[j].first),
                                  perm_compose(elems[i].second, elems[j].second)});

    // star against a generator: m * pi_y = m . pi_{u^{-1}(y)} with u the first
    // component of m; extend along a BFS spanning tree of left-normed words.
    std::vector<Perm> uinv(m);
    for (int i = 0; i < m; ++i) uinv[i] = perm_inverse(elems[i].first);
    auto star_gen = [&](int i, int y) { return dot[i][gen_of[uinv[i][y]]]; };

    std::vector<int> order;      // discovery order
    std::vector<std::pair<int, int>> parent(m, {-1, -1});
    std::vector<char> seen(m, 0);
    seen[0] = 1;
    order.push_back(0);
    for (size_t head = 0; head < order.size(); ++head) {
        int w = order[head];
        for (int y = 0; y < n; ++y) {
            int w2 = star_gen(w, y);
            if (!seen[w2]) {
                seen[w2] = 1;
                parent[w2] = {w, y};
                order.push_back(w2);
            }
        }
    }
    require((int)order.size() == m, errc::internal,
            "star words do not reach the whole permutation group");

    std::vector<std::vector<int>> star(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i) {
        star[i][0] = i;
        for (size_t k = 1; k < order.size(); ++k) {
            auto [w, y] = parent[order[k]];
            star[i][order[k]] = star_gen(star[i][w], y);
        }
    }

    PermutationBrace out;
    out.brace = SkewBrace::make(star, dot);
    out.gen_of = std::move(gen_of);
    out.pair_of = std::move(elems);
    return out;
}

Solution retraction(const Solution& S, std::vector<int>* class_of_out) {
    require(is_involutive(S), errc::involutive_required,
            "retraction is defined for involutive solutions");
    require(is_nondegenerate(S), errc::nondegenerate_required,
            "retraction needs a non-degenerate solution");
    int n = S.n;
    std::vector<int> class_of(n, -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
        if (class_of[x] >= 0) continue;
        int id = (int)reps.size();
        reps.push_back(x);
        for (int y = x; y < n; ++y)
            if (class_of[y] < 0 && S.F[y] == S.F[x]) class_of[y] = id;
    }
    int m = (int)reps.size();
    Solution R;
    R.n = m;
    R.F.assign(m, std::vector<int>(m));
    R.Gt.assign(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            R.F[i][j] = class_of[S.F[reps[i]][reps[j]]];
            R.Gt[i][j] = class_of[S.Gt[reps[i]][reps[j]]];
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            require(class_of[S.F[x][y]] == R.F[class_of[x]][class_of[y]],
                    errc::internal, "retraction of f is not well defined");
            require(class_of[S.Gt[x][y]] == R.Gt[class_of[x]][class_of[y]],
                    errc::internal, "retraction of g is not well defined");
        }
    require(verify_ybe(R).ok, errc::internal, "retraction is not a solution");
    if (class_of_out) *class_of_out = std::move(class_of);
    return R;
}

bool is_irretractable(const Solution& S) {
    require(is_involutive(S), errc::involutive_required,
            "irretractability is defined for involutive solutions");
    for (int x = 0; x < S.n; ++x)
        for (int y = x + 1; y < S.n; ++y)
            if (S.F[x] == S.F[y]) return false;
    return true;
}

std::vector<std::vector<int>> derived_rack(const Solution& S) {
    require(is_nondegenerate(S), errc::nondegenerate_required,
            "derived structure needs a non-degenerate solution");
    int n = S.n;
    std::vector<Perm> finv(n);
    for (int x = 0; x < n; ++x) finv[x] = perm_inverse(S.F[x]);
    std::vector<std::vector<int>> circ(n, std::vector<int>(n));
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            circ[y][x] = S.F[y][S.Gt[finv[x][y]][x]];
    require(is_rack(circ), errc::internal, "derived structure is not a rack");
    return circ;
}

namespace {

Solution rack_as_solution(const std::vector<std::vector<int>>& circ) {
    Solution S;
    S.n = (int)circ.size();
    S.F.assign(S.n, Perm());
    for (int x = 0; x < S.n; ++x) S.F[x] = perm_identity(S.n);
    S.Gt = circ;
    return S;
}

} // namespace

bool is_rack(const std::vector<std::vector<int>>& circ) {
    int n = (int)circ.size();
    if (n == 0) return false;
    for (const auto& row : circ) {
        if ((int)row.size() != n) return false;
        for (int v : row)
            if (v < 0 || v >= n) return false;
        if (!is_permutation(row)) return false;
    }
    Solution S = rack_as_solution(circ);
    return is_nondegenerate(S) && r_bijective(S) && verify_ybe(S).ok;
}

bool is_quandle(const std::vector<std::vector<int>>& circ) {
    if (!is_rack(circ)) return false;
    for (size_t x = 0; x < circ.size(); ++x)
        if (circ[x][x] != (int)x) return false;
    return true;
}

bool is_birack(const std::vector<std::vector<int>>& circ,
               const std::vector<std::vector<int>>& star) {
    int n = (int)circ.size();
    if (n == 0 || (int)star.size() != n) return false;
    for (const auto& row : circ)
        if ((int)row.size() != n) return false;
    for (const auto& row : star)
        if ((int)row.size() != n) return false;
    Solution S;
    S.n = n;
    S.F = circ; // r(x,y) = (x o y, y * x)
    S.Gt = star;
    for (const auto& row : S.F)
        for (int v : row)
            if (v < 0 || v >= n) return false;
    for (const auto& row : S.Gt)
        for (int v : row)
            if (v < 0 || v >= n) return false;
    return is_nondegenerate(S) && r_bijective(S) && verify_ybe(S).ok;
}

namespace {

struct SolutionIso {
    const Solution& A;
    const Solution& B;
    int n;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> akey, bkey;
    std::vector<int> img, pre;

    SolutionIso(const Solution& a, const Solution& b) : A(a), B(b), n(a.n) {}

    bool assign(int x, int u, std::vector<int>& log) {
        if (img[x] >= 0) return img[x] == u;
        if (pre[u] >= 0 || akey[x] != bkey[u]) return false;
        img[x] = u;
        pre[u] = x;
        log.push_back(x);
        // propagate: every fully-assigned pair forces the image of f and g values
        std::vector<int> queue{x};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int a = queue[qi];
            for (int b = 0; b < n; ++b) {
                if (img[b] < 0) continue;
                std::pair<int, int> checks[4] = {
                    {A.F[a][b], B.F[img[a]][img[b]]},
                    {A.F[b][a], B.F[img[b]][img[a]]},
                    {A.Gt[a][b], B.Gt[img[a]][img[b]]},
                    {A.Gt[b][a], B.Gt[img[b]][img[a]]}};
                for (auto [p, q] : checks) {
                    if (img[p] >= 0) {
                        if (img[p] != q) return false;
                    } else {
                        if (pre[q] >= 0 || akey[p] != bkey[q]) return false;
                        img[p] = q;
                        pre[q] = p;
                        log.push_back(p);
                        queue.push_back(p);
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
        }
    }

    bool search(int pos) {
        while (pos < n && img[pos] >= 0) ++pos;
        if (pos == n) return true;
        for (int u = 0; u < n; ++u) {
            if (pre[u] >= 0) continue;
            std::vector<int> log;
            if (assign(pos, u, log) && search(pos + 1)) return true;
            undo(log);
        }
        return false;
    }

    std::optional<Perm> run() {
        if (A.n != B.n) return std::nullopt;
        akey.resize(n);
        bkey.resize(n);
        for (int x = 0; x < n; ++x) {
            akey[x] = {cycle_type(A.F[x]), cycle_type(A.Gt[x])};
            bkey[x] = {cycle_type(B.F[x]), cycle_type(B.Gt[x])};
        }
        auto profile = [](std::vector<std::pair<std::vector<int>, std::vector<int>>> k) {
            std::sort(k.begin(), k.end());
            return k;
        };
        if (profile(akey) != profile(bkey)) return std::nullopt;
        img.assign(n, -1);
        pre.assign(n, -1);
        if (!search(0)) return std::nullopt;
        return img;
    }
};

} // namespace

std::optional<Perm> solution_isomorphism(const Solution& A, const Solution& B) {
    require(is_nondegenerate(A) && is_nondegenerate(B), errc::nondegenerate_required,
            "isomorphism search expects non-degenerate solutions");
    SolutionIso s(A, B);
    return s.run();
}

Solution associated_solution(const BracePtr& B) {
    require(B->star_abelian(), errc::not_a_left_brace,
            "the additive group must be abelian");
    int n = B->order();
    Solution S;
    S.n = n;
    S.F.assign(n, std::vector<int>(n));
    S.Gt.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) S.F[a][b] = B->lambda(a, b);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) S.Gt[b][a] = B->lambda_inv(S.F[a][b], a);
    require(is_nondegenerate(S), errc::internal, "associated solution degenerate");
    require(verify_ybe(S).ok, errc::internal, "associated solution fails the braid test");
    require(is_involutive(S), errc::internal, "associated solution is not involutive");
    return S;
}

Solution skew_associated_solution(const BracePtr& B) {
    int n = B->order();
    Solution S;
    S.n = n;
    S.F.assign(n, std::vector<int>(n));
    S.Gt.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) S.F[a][b] = B->lambda(a, b);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) S.Gt[b][a] = B->gamma(b, a);
    require(is_nondegenerate(S), errc::internal, "skew associated solution degenerate");
    require(verify_ybe(S).ok, errc::internal,
            "skew associated solution fails the braid test");
    return S;
}

} // namespace brachyon
