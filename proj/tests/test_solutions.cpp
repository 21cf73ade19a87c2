#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "solution.hpp"

using namespace brachyon;

namespace {

GroupPtr zn(int n) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
    return FiniteGroup::make(rows);
}

GroupPtr s3() {
    std::vector<Perm> ps;
    Perm p{0, 1, 2};
    do {
        ps.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<int>> rows(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            Perm c = perm_compose(ps[i], ps[j]);
            rows[i][j] = (int)(std::find(ps.begin(), ps.end(), c) - ps.begin());
        }
    return FiniteGroup::make(rows);
}

Solution flip(int n) {
    Solution S;
    S.n = n;
    S.F.assign(n, Perm(n));
    S.Gt.assign(n, Perm(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            S.F[x][y] = y;
            S.Gt[x][y] = y;
        }
    return S;
}

// the braid condition checked directly on X^2 -> X^2 maps
bool braid_by_hand(const Solution& S) {
    int n = S.n;
    auto r = [&](int x, int y) { return std::pair<int, int>{S.F[x][y], S.Gt[y][x]}; };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                // r x id then id x r then r x id
                auto [a1, b1] = r(x, y);
                auto [c1, d1] = r(b1, z);
                auto [e1, f1] = r(a1, c1);
                // id x r then r x id then id x r
                auto [c2, d2] = r(y, z);
                auto [a2, b2] = r(x, c2);
                auto [e2, f2] = r(b2, d2);
                if (a2 != e1 || e2 != f1 || f2 != d1) return false;
            }
    return true;
}

bool r_squared_is_identity(const Solution& S) {
    for (int x = 0; x < S.n; ++x)
        for (int y = 0; y < S.n; ++y) {
            int u = S.F[x][y], v = S.Gt[y][x];
            if (S.F[u][v] != x || S.Gt[v][u] != y) return false;
        }
    return true;
}

Solution relabel(const Solution& S, const Perm& p) {
    Perm pi = perm_inverse(p);
    Solution T;
    T.n = S.n;
    T.F.assign(S.n, Perm(S.n));
    T.Gt.assign(S.n, Perm(S.n));
    for (int x = 0; x < S.n; ++x)
        for (int y = 0; y < S.n; ++y) {
            T.F[x][y] = p[S.F[pi[x]][pi[y]]];
            T.Gt[x][y] = p[S.Gt[pi[x]][pi[y]]];
        }
    return T;
}

} // namespace

TEST_CASE("flip solution") {
    Solution S = flip(4);
    CHECK(r_bijective(S));
    CHECK(verify_ybe(S).ok);
    CHECK(is_nondegenerate(S));
    CHECK(is_involutive(S));
    CHECK(is_square_free(S));
    CHECK(permutation_brace(S).brace->order() == 1);
    CHECK(retraction(S).n == 1);
}

TEST_CASE("identity map solves the braid equation but is degenerate") {
    Solution S;
    S.n = 3;
    S.F.assign(3, Perm(3));
    S.Gt.assign(3, Perm(3));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            S.F[x][y] = x; // constant rows
            S.Gt[x][y] = x;
        }
    // r(x,y) = (x,y) after the row/column conventions untangle
    CHECK(verify_ybe(S).ok);
    CHECK(r_bijective(S));
    CHECK_FALSE(is_nondegenerate(S));
    CHECK_THROWS_AS(permutation_brace(S), Error);
}

TEST_CASE("ybe verdict matches the braid check on arbitrary tables") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int trial = 0; trial < 300; ++trial) {
        Solution S;
        S.n = 3;
        S.F.assign(3, Perm(3));
        S.Gt.assign(3, Perm(3));
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                S.F[x][y] = pick(rng);
                S.Gt[x][y] = pick(rng);
            }
        CHECK(verify_ybe(S).ok == braid_by_hand(S));
    }
}

TEST_CASE("failing triples are reported honestly") {
    Solution S = flip(3);
    S.F[0] = {1, 0, 2}; // one twisted row breaks the first component
    YbeReport rep = verify_ybe(S);
    CHECK_FALSE(rep.ok);
    CHECK(rep.eq >= 1);
    CHECK(rep.eq <= 3);
    const auto& F = S.F;
    const auto& Gt = S.Gt;
    int x = rep.x, y = rep.y, z = rep.z;
    bool broken = false;
    if (rep.eq == 1) broken = F[F[x][y]][F[Gt[y][x]][z]] != F[x][F[y][z]];
    if (rep.eq == 2)
        broken = Gt[F[Gt[y][x]][z]][F[x][y]] != F[Gt[F[y][z]][x]][Gt[z][y]];
    if (rep.eq == 3) broken = Gt[z][Gt[y][x]] != Gt[Gt[z][y]][Gt[F[y][z]][x]];
    CHECK(broken);
}

TEST_CASE("involutivity equals r squared being the identity") {
    std::vector<Solution> samples{flip(3), associated_solution(cyclic_flip_brace(2)),
                                  associated_solution(trivial_brace(zn(6))),
                                  skew_associated_solution(cyclic_flip_brace(3)),
                                  skew_associated_solution(opposite_brace(s3())),
                                  skew_associated_solution(order21_brace())};
    for (const auto& S : samples) CHECK(is_involutive(S) == r_squared_is_identity(S));
}

TEST_CASE("associated solution of a left brace") {
    BracePtr B = cyclic_flip_brace(2);
    Solution S = associated_solution(B);
    CHECK(S.n == 4);
    CHECK(is_involutive(S));
    CHECK(is_nondegenerate(S));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(S.F[a][b] == B->lambda(a, b));

    // only left braces qualify
    CHECK_THROWS_AS(associated_solution(order21_brace()), Error);
    try {
        associated_solution(opposite_brace(s3()));
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code == errc::not_a_left_brace);
    }
}

TEST_CASE("skew associated solution works for any brace") {
    for (BracePtr B : {opposite_brace(s3()), order21_brace(), trivial_brace(s3())}) {
        Solution S = skew_associated_solution(B);
        CHECK(S.n == B->order());
        CHECK(is_nondegenerate(S));
        CHECK(verify_ybe(S).ok);
    }
    // the trivial brace gives the flip
    Solution S = skew_associated_solution(trivial_brace(zn(5)));
    CHECK(solution_isomorphism(S, flip(5)).has_value());
}

TEST_CASE("structure group recovers the brace modulo its socle") {
    for (BracePtr B : {cyclic_flip_brace(2), trivial_brace(zn(6)), vendramin_brace()}) {
        Solution S = associated_solution(B);
        PermutationBrace P = permutation_brace(S);
        BracePtr Q = quotient_brace(B, socle(B).elems);
        CHECK(P.brace->order() == Q->order());
        CHECK(brace_isomorphism(P.brace, Q).has_value());
        // generators carry the points: gen_of[x] multiplies as the image of x
        for (int x = 0; x < S.n; ++x) CHECK(P.pair_of[P.gen_of[x]].first == S.F[x]);
    }
}

TEST_CASE("gtilde inverts f exactly on involutive solutions") {
    for (BracePtr B : {cyclic_flip_brace(2), trivial_brace(zn(4)), vendramin_brace()}) {
        Solution S = associated_solution(B);
        auto gt = gtilde_all(S);
        for (int x = 0; x < S.n; ++x) CHECK(gt[x] == perm_inverse(S.F[x]));
    }
    // and differs on a non-involutive one
    Solution S = skew_associated_solution(opposite_brace(s3()));
    REQUIRE_FALSE(is_involutive(S));
    auto gt = gtilde_all(S);
    bool all_inverse = true;
    for (int x = 0; x < S.n; ++x)
        if (gt[x] != perm_inverse(S.F[x])) all_inverse = false;
    CHECK_FALSE(all_inverse);
}

TEST_CASE("retraction collapses to the socle quotient") {
    CHECK(retraction(associated_solution(trivial_brace(zn(6)))).n == 1);

    for (BracePtr B : {cyclic_flip_brace(2)}) {
        Solution S = associated_solution(B);
        std::vector<int> cls;
        Solution R = retraction(S, &cls);
        BracePtr Q = quotient_brace(B, socle(B).elems);
        CHECK(R.n == Q->order());
        CHECK(solution_isomorphism(R, associated_solution(Q)).has_value());
        CHECK((int)cls.size() == S.n);
        for (int x = 0; x < S.n; ++x)
            for (int y = 0; y < S.n; ++y)
                if (S.F[x] == S.F[y]) CHECK(cls[x] == cls[y]);
    }

    // retraction needs involutivity
    try {
        retraction(skew_associated_solution(opposite_brace(s3())));
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code == errc::involutive_required);
    }
}

TEST_CASE("irretractability of the big solution with trivial socle") {
    Solution S = associated_solution(vendramin_brace());
    CHECK(S.n == 64);
    CHECK(is_irretractable(S));
    CHECK(retraction(S).n == 64);
    CHECK_FALSE(is_irretractable(associated_solution(trivial_brace(zn(6)))));
}

TEST_CASE("derived rack is trivial exactly for involutive solutions") {
    Solution S = associated_solution(cyclic_flip_brace(2));
    auto circ = derived_rack(S);
    for (int y = 0; y < S.n; ++y) CHECK(circ[y] == perm_identity(S.n));

    Solution T = skew_associated_solution(opposite_brace(s3()));
    auto circ2 = derived_rack(T);
    CHECK(is_rack(circ2));
    bool trivial = true;
    for (int y = 0; y < T.n; ++y)
        if (circ2[y] != perm_identity(T.n)) trivial = false;
    CHECK_FALSE(trivial);
}

TEST_CASE("racks and quandles") {
    // conjugation on S3 is a quandle
    GroupPtr G = s3();
    std::vector<std::vector<int>> conj(6, std::vector<int>(6));
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x) conj[y][x] = G->conj(y, x);
    CHECK(is_rack(conj));
    CHECK(is_quandle(conj));

    // constant translation on Z3 is a rack but not a quandle
    std::vector<std::vector<int>> cyc(3, std::vector<int>(3));
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) cyc[y][x] = (x + 1) % 3;
    CHECK(is_rack(cyc));
    CHECK_FALSE(is_quandle(cyc));

    // trivial rack
    std::vector<std::vector<int>> triv(4, perm_identity(4));
    CHECK(is_rack(triv));
    CHECK(is_quandle(triv));

    // row-permutation tables: rack status must match the derived solution
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<int>> t(3, perm_identity(3));
        for (auto& row : t) std::shuffle(row.begin(), row.end(), rng);
        Solution S;
        S.n = 3;
        S.F.assign(3, perm_identity(3)); // f_x = id
        S.Gt = t;                        // g_y = row y
        bool self_dist = true;
        for (int x = 0; x < 3 && self_dist; ++x)
            for (int y = 0; y < 3 && self_dist; ++y)
                for (int z = 0; z < 3; ++z)
                    if (t[y][t[x][z]] != t[t[y][x]][t[y][z]]) {
                        self_dist = false;
                        break;
                    }
        CHECK(is_rack(t) == self_dist);
        if (is_rack(t)) CHECK(verify_ybe(S).ok);
    }
}

TEST_CASE("biracks") {
    // any corpus solution gives a birack through its own tables
    for (const Solution& S : {associated_solution(cyclic_flip_brace(2)),
                              skew_associated_solution(opposite_brace(s3()))})
        CHECK(is_birack(S.F, S.Gt));

    // breaking one entry kills it
    Solution S = associated_solution(cyclic_flip_brace(2));
    auto F = S.F;
    F[0][1] = F[0][0];
    CHECK_FALSE(is_birack(F, S.Gt));
}

TEST_CASE("solution isomorphism returns the least map") {
    Solution S = associated_solution(cyclic_flip_brace(2));

    auto id = solution_isomorphism(S, S);
    REQUIRE(id.has_value());
    CHECK(*id == perm_identity(4));

    std::mt19937_64 rng(31);
    Perm p = perm_identity(4);
    std::shuffle(p.begin(), p.end(), rng);
    Solution T = relabel(S, p);
    auto iso = solution_isomorphism(S, T);
    REQUIRE(iso.has_value());

    // collect every isomorphism by brute force and compare with the minimum
    std::vector<Perm> all;
    Perm q = perm_identity(4);
    do {
        bool ok = true;
        for (int x = 0; x < 4 && ok; ++x)
            for (int y = 0; y < 4; ++y)
                if (q[S.F[x][y]] != T.F[q[x]][q[y]] || q[S.Gt[x][y]] != T.Gt[q[x]][q[y]]) {
                    ok = false;
                    break;
                }
        if (ok) all.push_back(q);
    } while (std::next_permutation(q.begin(), q.end()));
    REQUIRE(!all.empty());
    CHECK(*iso == *std::min_element(all.begin(), all.end()));

    // genuinely different solutions
    CHECK_FALSE(solution_isomorphism(S, flip(4)).has_value());
    CHECK_FALSE(solution_isomorphism(S, flip(5)).has_value());
}

TEST_CASE("square-free solutions match square-free braces") {
    for (BracePtr B : {cyclic_flip_brace(2), trivial_brace(zn(6)), vendramin_brace()}) {
        Solution S = associated_solution(B);
        CHECK(is_square_free(S) ==
              (square_free_elements(B).size() == (size_t)B->order()));
    }
}

TEST_CASE("shape validation") {
    Solution S = flip(3);
    S.F[2].pop_back();
    CHECK_THROWS_AS(check_solution_shape(S), Error);
    Solution T = flip(3);
    T.Gt[0][0] = 5;
    CHECK_THROWS_AS(check_solution_shape(T), Error);
    CHECK_NOTHROW(check_solution_shape(flip(3)));
}
