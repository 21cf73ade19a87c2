#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "construct.hpp"

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

Subgroup trivial_sub(GroupPtr G) { return subgroup_closure(G, {0}); }

// the one-orbit spec over the trivial order-2 brace; its four-point solution
// has every f row equal to (0 1)(2 3) and every g row equal to (0 3)(1 2)
ConstructionSpec z2_spec() {
    ConstructionSpec spec;
    spec.brace = trivial_brace(zn(2));
    spec.sd = brace_semidirect(spec.brace);
    OrbitFamily fam;
    fam.rep = 1;
    fam.subs.push_back(trivial_sub(spec.sd.group));
    spec.families.push_back(std::move(fam));
    return spec;
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

errc code_of(std::function<void()> fn) {
    try {
        fn();
        return errc::none;
    } catch (const Error& e) {
        return e.code;
    }
}

} // namespace

TEST_CASE("theta orbits of a trivial brace are conjugacy classes") {
    GroupPtr G = s3();
    BracePtr B = trivial_brace(G);
    auto orbits = theta_orbits(B);
    auto classes = conjugacy_classes(G);
    std::set<std::vector<int>> a(orbits.begin(), orbits.end());
    std::set<std::vector<int>> b(classes.begin(), classes.end());
    CHECK(a == b);
}

TEST_CASE("theta action agrees with the orbit computation") {
    for (BracePtr B : {trivial_brace(s3()), cyclic_flip_brace(2), order21_brace(),
                       vendramin_brace()}) {
        SemidirectProduct sd = brace_semidirect(B);
        GroupAction act = theta_action(B, sd);
        auto via_action = action_orbits(act);
        auto direct = theta_orbits(B);
        CHECK(std::set<std::vector<int>>(via_action.begin(), via_action.end()) ==
              std::set<std::vector<int>>(direct.begin(), direct.end()));
    }
}

TEST_CASE("left braces have matching theta and lambda orbits") {
    BracePtr B = vendramin_brace();
    auto orbits = theta_orbits(B);
    GroupAction lam = lambda_action(B);
    auto lorb = action_orbits(lam);
    CHECK(std::set<std::vector<int>>(orbits.begin(), orbits.end()) ==
          std::set<std::vector<int>>(lorb.begin(), lorb.end()));
}

TEST_CASE("semidirect group of a brace") {
    BracePtr B = order21_brace();
    SemidirectProduct sd = brace_semidirect(B);
    CHECK(sd.group->order() == 441);
    CHECK(sd.n_order == 21);
    CHECK(sd.h_order == 21);
    // multiplication law: (a,b)(c,d) = (a * lambda_b(c), b . d)
    for (int g = 0; g < 441; g += 7)
        for (int h = 0; h < 441; h += 11) {
            auto [a, b] = sd.decode(g);
            auto [c, d] = sd.decode(h);
            CHECK(sd.group->mul(g, h) ==
                  sd.code(B->star(a, B->lambda(b, c)), B->dot(b, d)));
        }
}

TEST_CASE("stabilizers under theta") {
    BracePtr B = trivial_brace(s3());
    SemidirectProduct sd = brace_semidirect(B);
    int t = -1;
    for (int g = 1; g < 6; ++g)
        if (B->star_group()->element_order(g) == 2) {
            t = g;
            break;
        }
    Subgroup st = stabilizer_in_G(B, sd, t);
    // for a trivial brace theta is conjugation by the first coordinate
    CHECK(st.order() == centralizer(s3(), t).order() * 6);
    CHECK(stabilizer_in_G(B, sd, 0).order() == 36);
}

TEST_CASE("four-point solution over the order-2 brace") {
    ConstructionSpec spec = z2_spec();
    CHECK_FALSE(validate_spec(spec).has_value());
    BuiltSolution built = build_solution(spec);
    const Solution& S = built.sol;
    REQUIRE(S.n == 4);
    for (int x = 0; x < 4; ++x) {
        CHECK(S.F[x] == Perm{1, 0, 3, 2});
        CHECK(S.Gt[x] == Perm{3, 2, 1, 0});
    }
    CHECK_FALSE(is_involutive(S));
    CHECK(is_nondegenerate(S));
    CHECK(verify_ybe(S).ok);
    CHECK(permutation_brace(S).brace->order() == 2);
    CHECK_FALSE(check_square_free_spec(spec));
    CHECK_FALSE(is_square_free(S));

    CHECK(built.block_of == std::vector<int>{0, 0, 0, 0});
    CHECK(built.rep_elem == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("spec validation failure modes") {
    BracePtr B2 = trivial_brace(zn(2));
    SemidirectProduct sd2 = brace_semidirect(B2);

    { // no families
        ConstructionSpec s{B2, sd2, {}};
        auto v = validate_spec(s);
        REQUIRE(v.has_value());
        CHECK(v->code == errc::spec_invalid);
    }
    { // repeated orbit
        ConstructionSpec s{B2, sd2, {}};
        s.families.push_back({1, {trivial_sub(sd2.group)}});
        s.families.push_back({1, {trivial_sub(sd2.group)}});
        auto v = validate_spec(s);
        REQUIRE(v.has_value());
        CHECK(v->code == errc::spec_invalid);
    }
    { // orbit of the identity generates nothing
        ConstructionSpec s{B2, sd2, {}};
        s.families.push_back({0, {trivial_sub(sd2.group)}});
        auto v = validate_spec(s);
        REQUIRE(v.has_value());
        CHECK(v->code == errc::generation_fails);
    }
    { // full subgroup survives in the core
        ConstructionSpec s{B2, sd2, {}};
        s.families.push_back({1, {subgroup_closure(sd2.group, {1, 2, 3})}});
        auto v = validate_spec(s);
        REQUIRE(v.has_value());
        CHECK(v->code == errc::core_fails);
    }
    { // subgroup outside the stabilizer
        BracePtr B = trivial_brace(s3());
        SemidirectProduct sd = brace_semidirect(B);
        int t = -1, c = -1;
        for (int g = 1; g < 6; ++g) {
            if (B->star_group()->element_order(g) == 2 && t < 0) t = g;
            if (B->star_group()->element_order(g) == 3 && c < 0) c = g;
        }
        ConstructionSpec s{B, sd, {}};
        s.families.push_back({t, {subgroup_closure(sd.group, {sd.code(c, 0)})}});
        auto v = validate_spec(s);
        REQUIRE(v.has_value());
        CHECK(v->code == errc::containment_fails);
    }
    { // build refuses an invalid spec
        ConstructionSpec s{B2, sd2, {}};
        s.families.push_back({0, {trivial_sub(sd2.group)}});
        CHECK(code_of([&] { build_solution(s); }) == errc::spec_invalid);
    }
}

TEST_CASE("eta-sigma route matches the coset route") {
    ConstructionSpec spec = z2_spec();
    BuiltSolution built = build_solution(spec);

    // X = G with sigma the left translation, eta constant at the generator
    GroupPtr G = spec.sd.group;
    std::vector<Perm> perms(4, Perm(4));
    for (int g = 0; g < 4; ++g)
        for (int x = 0; x < 4; ++x) perms[g][x] = G->mul(g, x);
    GroupAction sigma = make_action(G, 4, std::move(perms));
    std::vector<int> eta(4, 1);
    Solution S = build_from_eta_sigma(spec.brace, spec.sd, eta, sigma);
    CHECK(S.F == built.sol.F);
    CHECK(S.Gt == built.sol.Gt);

    // generation failure: label everything by the identity
    {
        std::vector<int> zeros(4, 0);
        try {
            build_from_eta_sigma(spec.brace, spec.sd, zeros, sigma);
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.code == errc::hypothesis_fails);
            CHECK(std::string(e.what()).find("generation") != std::string::npos);
        }
    }
    // injectivity failure: trivial action on one point cannot separate pairs
    {
        GroupAction triv = make_action(G, 1, std::vector<Perm>(4, Perm{0}));
        std::vector<int> one{1};
        try {
            build_from_eta_sigma(spec.brace, spec.sd, one, triv);
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.code == errc::hypothesis_fails);
            CHECK(std::string(e.what()).find("injectivity") != std::string::npos);
        }
    }
    // compatibility failure: labels that do not intertwine
    {
        std::vector<Perm> ps(4, Perm(4));
        for (int g = 0; g < 4; ++g)
            for (int x = 0; x < 4; ++x) ps[g][x] = G->mul(g, x);
        GroupAction sigma2 = make_action(G, 4, std::move(ps));
        std::vector<int> eta2{1, 1, 1, 0};
        try {
            build_from_eta_sigma(spec.brace, spec.sd, eta2, sigma2);
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.code == errc::hypothesis_fails);
            CHECK(std::string(e.what()).find("compatibility") != std::string::npos);
        }
    }
}

TEST_CASE("spec enumeration over the order-2 brace") {
    BracePtr B = trivial_brace(zn(2));
    // orbit {1} alone: 5 subgroups of the order-4 group, sizes one and two as
    // multisets, minus the full-subgroup core failures; then the two-orbit
    // variants on top
    auto specs1 = enumerate_specs(B, 0, 1);
    CHECK(specs1.size() == 28);
    auto specs2 = enumerate_specs(B, 0, 2);
    CHECK(specs2.size() == 414);
    for (const auto& s : specs2) CHECK_FALSE(validate_spec(s).has_value());

    // size filter keeps exactly the small ones
    auto sized = enumerate_specs(B, 4, 2);
    size_t expect = 0;
    for (const auto& s : specs2) {
        long long size = 0;
        for (const auto& fam : s.families)
            for (const auto& K : fam.subs) size += 4 / K.order();
        if (size <= 4) ++expect;
    }
    CHECK(sized.size() == expect);
    CHECK(expect > 0);
}

TEST_CASE("classification dedupes by isomorphism") {
    BracePtr B = trivial_brace(zn(2));
    std::vector<ConstructionSpec> reps;
    auto sols = classify_solutions(B, 8, 2, &reps);
    REQUIRE(sols.size() == reps.size());
    CHECK(sols.size() >= 2);

    for (size_t i = 0; i < sols.size(); ++i)
        for (size_t j = i + 1; j < sols.size(); ++j)
            CHECK_FALSE(solution_isomorphism(sols[i], sols[j]).has_value());

    // ordered by size then tables
    for (size_t i = 0; i + 1 < sols.size(); ++i) {
        CHECK(sols[i].n <= sols[i + 1].n);
        if (sols[i].n == sols[i + 1].n)
            CHECK(std::make_pair(sols[i].F, sols[i].Gt) <
                  std::make_pair(sols[i + 1].F, sols[i + 1].Gt));
    }

    // each returned spec rebuilds its solution
    for (size_t i = 0; i < sols.size(); ++i) {
        BuiltSolution again = build_solution(reps[i]);
        CHECK(again.sol.F == sols[i].F);
        CHECK(again.sol.Gt == sols[i].Gt);
    }

    // deterministic
    auto sols2 = classify_solutions(B, 8, 2);
    REQUIRE(sols2.size() == sols.size());
    for (size_t i = 0; i < sols.size(); ++i) {
        CHECK(sols2[i].F == sols[i].F);
        CHECK(sols2[i].Gt == sols[i].Gt);
    }
}

TEST_CASE("isomorphism certificates") {
    // a spec against itself: the identity certificate data must come out
    ConstructionSpec A = z2_spec();
    auto cert = find_iso_certificate(A, A);
    REQUIRE(cert.has_value());
    CHECK(check_iso_certificate(A, A, *cert));
    CHECK(cert->psi == perm_identity(2));
    CHECK(cert->alpha == std::vector<int>{0});
    Perm m = certified_map(A, A, *cert);
    CHECK(m == perm_identity(4));

    // conjugated subgroups over the trivial S3 brace
    GroupPtr G = s3();
    BracePtr B = trivial_brace(G);
    SemidirectProduct sd = brace_semidirect(B);
    std::vector<int> transpositions;
    for (int g = 1; g < 6; ++g)
        if (G->element_order(g) == 2) transpositions.push_back(g);
    REQUIRE(transpositions.size() == 3);
    int t1 = transpositions[0], t2 = transpositions[1];

    ConstructionSpec S1{B, sd, {}};
    S1.families.push_back({t1, {subgroup_closure(sd.group, {sd.code(t1, 0)})}});
    REQUIRE_FALSE(validate_spec(S1).has_value());

    ConstructionSpec S2{B, sd, {}};
    S2.families.push_back({t2, {subgroup_closure(sd.group, {sd.code(t2, 0)})}});
    REQUIRE_FALSE(validate_spec(S2).has_value());

    auto cert2 = find_iso_certificate(S1, S2);
    REQUIRE(cert2.has_value());
    std::string why;
    CHECK(check_iso_certificate(S1, S2, *cert2, &why));
    Perm map2 = certified_map(S1, S2, *cert2);
    CHECK(is_permutation(map2));

    // and the map is a genuine solution isomorphism
    BuiltSolution b1 = build_solution(S1);
    BuiltSolution b2 = build_solution(S2);
    for (int x = 0; x < b1.sol.n; ++x)
        for (int y = 0; y < b1.sol.n; ++y) {
            CHECK(map2[b1.sol.F[x][y]] == b2.sol.F[map2[x]][map2[y]]);
            CHECK(map2[b1.sol.Gt[x][y]] == b2.sol.Gt[map2[x]][map2[y]]);
        }

    // tampered certificates are rejected with a reason: some witness pair
    // must fail, since only part of G x G satisfies the matching equations
    {
        IsoCertificate broken = *cert2;
        bool found_reject = false;
        for (int y = 0; y < 36 && !found_reject; ++y)
            for (int z = 0; z < 36 && !found_reject; ++z) {
                broken.witness[0][0] = {y, z};
                if (!check_iso_certificate(S1, S2, broken, &why)) {
                    found_reject = true;
                    CHECK(why.find("equation") != std::string::npos);
                }
            }
        CHECK(found_reject);
    }
    IsoCertificate bad_psi = *cert2;
    std::swap(bad_psi.psi[0], bad_psi.psi[1]);
    CHECK_FALSE(check_iso_certificate(S1, S2, bad_psi, &why));
    CHECK(code_of([&] { certified_map(S1, S2, bad_psi); }) == errc::certificate_invalid);

    // specs with different block structure never certify
    ConstructionSpec S3x{B, sd, {}};
    S3x.families.push_back(
        {t1, {subgroup_closure(sd.group, {sd.code(t1, 0)}), trivial_sub(sd.group)}});
    REQUIRE_FALSE(validate_spec(S3x).has_value());
    CHECK_FALSE(find_iso_certificate(S1, S3x).has_value());
}

TEST_CASE("square-free specs match square-free solutions") {
    BracePtr B = trivial_brace(zn(2));
    for (const auto& spec : enumerate_specs(B, 0, 2)) {
        BuiltSolution built = build_solution(spec);
        CHECK(check_square_free_spec(spec) == is_square_free(built.sol));
    }
}

TEST_CASE("involutive specs validate and build") {
    BracePtr B = cyclic_flip_brace(2);
    InvolutiveSpec spec = canonical_involutive_spec(B);
    CHECK_FALSE(validate_involutive_spec(spec).has_value());
    BuiltSolution built = build_involutive(spec);
    CHECK(built.sol.n == 12); // three lambda orbits, trivial subgroups
    CHECK(is_involutive(built.sol));
    CHECK(is_nondegenerate(built.sol));
    CHECK(verify_ybe(built.sol).ok);

    // non-abelian star is refused
    CHECK(code_of([&] { canonical_involutive_spec(order21_brace()); }) ==
          errc::not_a_left_brace);
    {
        InvolutiveSpec bad;
        bad.brace = order21_brace();
        bad.families.push_back({0, {}});
        auto v = validate_involutive_spec(bad);
        REQUIRE(v.has_value());
        CHECK(v->code == errc::not_a_left_brace);
    }
    // subgroup outside the lambda stabilizer
    {
        InvolutiveSpec bad;
        bad.brace = B;
        // lambda_1 moves 1 (its orbit is {1,3}), so <1> cannot stabilize it
        bad.families.push_back({1, {subgroup_closure(B->dot_group(), {1})}});
        auto v = validate_involutive_spec(bad);
        REQUIRE(v.has_value());
        CHECK(v->code == errc::containment_fails);
    }
}

TEST_CASE("lifting involutive specs to the general construction") {
    for (BracePtr B : {cyclic_flip_brace(2), vendramin_brace()}) {
        InvolutiveSpec ispec = B->order() == 64 ? vendramin_involutive_spec()
                                                : canonical_involutive_spec(B);
        BuiltSolution direct = build_involutive(ispec);
        SemidirectProduct sd = brace_semidirect(B);
        ConstructionSpec lifted = lift_involutive_spec(ispec, sd);
        CHECK_FALSE(validate_spec(lifted).has_value());
        BuiltSolution via_lift = build_solution(lifted);
        CHECK(via_lift.sol.n == direct.sol.n);
        CHECK(solution_isomorphism(direct.sol, via_lift.sol).has_value());
        CHECK(check_square_free_spec(lifted) == is_square_free(direct.sol));
    }
}

TEST_CASE("the eight-point irretractable solution") {
    InvolutiveSpec spec = vendramin_involutive_spec();
    CHECK_FALSE(validate_involutive_spec(spec).has_value());
    BuiltSolution built = build_involutive(spec);
    const Solution& S = built.sol;
    REQUIRE(S.n == 8);
    CHECK(is_involutive(S));
    CHECK(is_nondegenerate(S));
    CHECK(verify_ybe(S).ok);
    CHECK(is_square_free(S));
    CHECK(is_irretractable(S));
    CHECK(permutation_brace(S).brace->order() == 64);
    CHECK(brace_isomorphism(permutation_brace(S).brace, vendramin_brace()).has_value());

    // the helper that picks full stabilizers lands on the same solution
    BuiltSolution again = build_irretractable(vendramin_brace(), {4, 32});
    CHECK(again.sol.F == S.F);
    CHECK(again.sol.Gt == S.Gt);
}

TEST_CASE("irretractable helper uses every orbit by default") {
    BracePtr B = vendramin_brace();
    BuiltSolution full = build_irretractable(B);
    CHECK(full.sol.n == 64); // orbit sizes sum to the order
    CHECK(is_irretractable(full.sol));
    // not square-free: elements of multiplicative order 4 have lambda_a(a) != a
    CHECK_FALSE(is_square_free(full.sol));
    CHECK(square_free_elements(B).size() < (size_t)B->order());
    // and it is the associated solution in disguise
    CHECK(solution_isomorphism(full.sol, associated_solution(B)).has_value());

    // preconditions
    CHECK(code_of([&] { build_irretractable(order21_brace()); }) ==
          errc::not_a_left_brace);
    CHECK(code_of([&] { build_irretractable(cyclic_flip_brace(2)); }) ==
          errc::socle_not_trivial);
}

TEST_CASE("racks from conjugacy classes") {
    GroupPtr G = s3();
    std::vector<int> transpositions, threecycles;
    for (int g = 1; g < 6; ++g) {
        if (G->element_order(g) == 2) transpositions.push_back(g);
        if (G->element_order(g) == 3) threecycles.push_back(g);
    }
    int t = transpositions[0];

    // full centralizer: the three-point conjugation quandle on transpositions
    {
        RackBuilt rb = rack_from_group(G, {{t, {centralizer(G, t)}}});
        REQUIRE(rb.circ.size() == 3);
        CHECK(rb.quandle);
        CHECK(is_rack(rb.circ));
        CHECK(is_quandle(rb.circ));

        // identify point u with the transposition rep_elem[u] * t * rep^-1
        std::vector<int> elt(3);
        for (int u = 0; u < 3; ++u) elt[u] = G->conj(rb.rep_elem[u], t);
        std::set<int> all(elt.begin(), elt.end());
        CHECK(all == std::set<int>(transpositions.begin(), transpositions.end()));
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) {
                // u acts on v by conjugation with the inverse element
                int expect = G->conj(G->inv(elt[u]), elt[v]);
                CHECK(elt[rb.circ[u][v]] == expect);
            }
    }

    // trivial subgroup: a six-point rack that is not a quandle
    {
        RackBuilt rb = rack_from_group(G, {{t, {trivial_sub(G)}}});
        CHECK(rb.circ.size() == 6);
        CHECK(is_rack(rb.circ));
        CHECK_FALSE(rb.quandle);
        CHECK_FALSE(is_quandle(rb.circ));
    }

    // failure modes
    CHECK(code_of([&] {
              rack_from_group(G, {{threecycles[0], {trivial_sub(G)}}});
          }) == errc::generation_fails);
    CHECK(code_of([&] {
              rack_from_group(
                  G, {{t, {trivial_sub(G)}}, {transpositions[1], {trivial_sub(G)}}});
          }) == errc::spec_invalid);
    CHECK(code_of([&] {
              rack_from_group(G, {{t, {subgroup_closure(G, {threecycles[0]})}}});
          }) == errc::containment_fails);
    GroupPtr Z4 = zn(4);
    CHECK(code_of([&] {
              rack_from_group(Z4, {{1, {subgroup_closure(Z4, {2})}}});
          }) == errc::core_fails);
}

TEST_CASE("recovering a spec from a solution") {
    // the four-point z2 solution
    {
        BuiltSolution built = build_solution(z2_spec());
        RecoveredSpec rec = spec_of_solution(built.sol);
        CHECK(rec.spec.brace->order() == 2);
        CHECK(is_permutation(rec.point_map));
        CHECK(build_solution(rec.spec).sol.n == 4);
    }
    // the flip splits into one orbit family with several trivial-image blocks
    {
        RecoveredSpec rec = spec_of_solution(flip(3));
        CHECK(rec.spec.brace->order() == 1);
        CHECK(rec.spec.families.size() == 1);
        CHECK(rec.spec.families[0].subs.size() == 3);
        Solution again = build_solution(rec.spec).sol;
        CHECK(again.F == flip(3).F);
        CHECK(again.Gt == flip(3).Gt);
    }
    // the eight-point solution round-trips through its permutation brace
    {
        BuiltSolution built = build_involutive(vendramin_involutive_spec());
        RecoveredSpec rec = spec_of_solution(built.sol);
        CHECK(rec.spec.brace->order() == 64);
        CHECK(rec.spec.families.size() == 2);
        CHECK(build_solution(rec.spec).sol.n == 8);
        CHECK(is_permutation(rec.point_map));
    }
    // degenerate input is refused
    {
        Solution S;
        S.n = 2;
        S.F.assign(2, Perm{0, 0});
        S.Gt.assign(2, Perm{0, 0});
        CHECK(code_of([&] { spec_of_solution(S); }) == errc::nondegenerate_required);
    }
}

TEST_CASE("enumeration respects the caps") {
    Caps saved = caps_storage();
    set_cap_override(8);
    // stabilizer of the order-9 trivial brace is the full order-81 group
    CHECK(code_of([&] { enumerate_specs(trivial_brace(zn(9)), 0, 1); }) ==
          errc::order_cap_exceeded);
    caps_storage() = saved;
}
