#include "construct.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace brachyon {

namespace {

std::string pair_str(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

Subgroup subgroup_from_mask(GroupPtr G, std::vector<char> mask) {
    Subgroup H;
    H.parent = G;
    for (size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) H.elems.push_back((int)i);
    H.member = std::move(mask);
    return H;
}

// Reindex a subgroup as a standalone group so the lattice walkers can run on
// it; elems are ascending, so local index 0 is the identity.
GroupPtr subgroup_as_group(const Subgroup& H) {
    int m = H.order();
    std::vector<int> local(H.parent->order(), -1);
    for (int i = 0; i < m; ++i) local[H.elems[i]] = i;
    std::vector<std::vector<int>> rows(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int p = H.parent->mul(H.elems[i], H.elems[j]);
            require(local[p] >= 0, errc::internal, "subgroup not closed");
            rows[i][j] = local[p];
        }
    return FiniteGroup::make(rows);
}

} // namespace

SemidirectProduct brace_semidirect(const BracePtr& B) {
    return semidirect_product(B->star_group(), B->dot_group(), lambda_action(B));
}

GroupAction theta_action(const BracePtr& B, const SemidirectProduct& sd) {
    int n = B->order();
    std::vector<Perm> perms(sd.group->order());
    for (int g = 0; g < sd.group->order(); ++g) {
        auto [a, b] = sd.decode(g);
        Perm p(n);
        for (int c = 0; c < n; ++c) p[c] = B->theta(a, b, c);
        perms[g] = std::move(p);
    }
    return make_action(sd.group, n, std::move(perms));
}

std::vector<std::vector<int>> theta_orbits(const BracePtr& B) {
    int n = B->order();
    // Theta_{(a,1)} is star conjugation, Theta_{(1,b)} is lambda_b; together
    // they generate the whole Theta image, so closing under them suffices.
    std::vector<Perm> maps;
    for (int a : greedy_generators(*B->star_group())) {
        Perm p(n);
        for (int c = 0; c < n; ++c) p[c] = B->star(B->star(a, c), B->star_inv(a));
        maps.push_back(std::move(p));
    }
    for (int b : greedy_generators(*B->dot_group())) {
        Perm p(n);
        for (int c = 0; c < n; ++c) p[c] = B->lambda(b, c);
        maps.push_back(std::move(p));
    }
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> orbits;
    for (int pt = 0; pt < n; ++pt) {
        if (seen[pt]) continue;
        std::vector<int> orb{pt};
        seen[pt] = 1;
        for (size_t head = 0; head < orb.size(); ++head)
            for (const auto& p : maps) {
                int q = p[orb[head]];
                if (!seen[q]) {
                    seen[q] = 1;
                    orb.push_back(q);
                }
            }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

Subgroup stabilizer_in_G(const BracePtr& B, const SemidirectProduct& sd, int pt) {
    require(pt >= 0 && pt < B->order(), errc::bad_input, "point out of range");
    std::vector<char> mask(sd.group->order(), 0);
    for (int g = 0; g < sd.group->order(); ++g) {
        auto [a, b] = sd.decode(g);
        if (B->theta(a, b, pt) == pt) mask[g] = 1;
    }
    return subgroup_from_mask(sd.group, std::move(mask));
}

std::optional<SpecViolation> validate_spec(const ConstructionSpec& spec) {
    const BracePtr& B = spec.brace;
    GroupPtr G = spec.sd.group;
    int n = B->order();
    if (spec.families.empty())
        return SpecViolation{errc::spec_invalid, "no orbit families given"};

    auto orbits = theta_orbits(B);
    std::vector<int> orbit_id(n);
    for (size_t i = 0; i < orbits.size(); ++i)
        for (int x : orbits[i]) orbit_id[x] = (int)i;

    std::set<int> used_orbits;
    for (const auto& fam : spec.families) {
        if (fam.rep < 0 || fam.rep >= n)
            return SpecViolation{errc::spec_invalid, "orbit representative out of range"};
        if (fam.subs.empty())
            return SpecViolation{errc::spec_invalid,
                                 "representative " + std::to_string(fam.rep) +
                                     " has no subgroups"};
        if (!used_orbits.insert(orbit_id[fam.rep]).second)
            return SpecViolation{errc::spec_invalid,
                                 "representative " + std::to_string(fam.rep) +
                                     " repeats an orbit"};
    }

    std::vector<int> span;
    for (const auto& fam : spec.families)
        for (int x : orbits[orbit_id[fam.rep]]) span.push_back(x);
    Subgroup gen = subgroup_closure(B->star_group(), span);
    if (gen.order() != n)
        return SpecViolation{errc::generation_fails,
                             "chosen orbits generate an additive subgroup of order " +
                                 std::to_string(gen.order()) + " of " + std::to_string(n)};

    for (size_t i = 0; i < spec.families.size(); ++i) {
        const auto& fam = spec.families[i];
        Subgroup st = stabilizer_in_G(B, spec.sd, fam.rep);
        for (size_t j = 0; j < fam.subs.size(); ++j) {
            const Subgroup& K = fam.subs[j];
            require(K.parent.get() == G.get(), errc::bad_input,
                    "subgroup lives in the wrong group");
            for (int g : K.elems)
                if (!st.contains(g)) {
                    auto [a, b] = spec.sd.decode(g);
                    return SpecViolation{
                        errc::containment_fails,
                        "subgroup " + std::to_string(j) + " of representative " +
                            std::to_string(fam.rep) + " contains " + pair_str(a, b) +
                            " which moves the representative"};
                }
        }
    }

    std::vector<char> joint(G->order(), 1);
    for (const auto& fam : spec.families)
        for (const auto& K : fam.subs) {
            Subgroup c = normal_core(G, K);
            for (int g = 0; g < G->order(); ++g)
                if (!c.contains(g)) joint[g] = 0;
        }
    for (int a = 1; a < n; ++a)
        if (joint[spec.sd.code(0, a)] && joint[spec.sd.code(a, a)])
            return SpecViolation{errc::core_fails,
                                 "element " + std::to_string(a) +
                                     " survives in every normal core"};
    return std::nullopt;
}

namespace {

struct BlockLayout {
    std::vector<CosetSpace> spaces;
    std::vector<int> fam_of_block, sub_of_block;
    std::vector<int> offset;
    int total = 0;
};

BlockLayout layout_blocks(GroupPtr G, const std::vector<OrbitFamily>& families) {
    BlockLayout L;
    for (size_t i = 0; i < families.size(); ++i)
        for (size_t j = 0; j < families[i].subs.size(); ++j) {
            L.spaces.push_back(left_cosets(G, families[i].subs[j]));
            L.fam_of_block.push_back((int)i);
            L.sub_of_block.push_back((int)j);
            L.offset.push_back(L.total);
            L.total += L.spaces.back().count();
        }
    return L;
}

void assert_built(const BracePtr& B, const Solution& S) {
    require(r_bijective(S), errc::internal, "built map is not bijective");
    require(is_nondegenerate(S), errc::internal, "built solution is degenerate");
    require(verify_ybe(S).ok, errc::internal, "built solution fails the braid test");
    PermutationBrace P = permutation_brace(S);
    require(brace_isomorphism(P.brace, B).has_value(), errc::internal,
            "permutation group structure does not match the input");
}

} // namespace

BuiltSolution build_solution(const ConstructionSpec& spec) {
    if (auto v = validate_spec(spec))
        fail(errc::spec_invalid, "invalid spec: " + v->detail);
    const BracePtr& B = spec.brace;
    GroupPtr G = spec.sd.group;
    BlockLayout L = layout_blocks(G, spec.families);

    BuiltSolution out;
    out.block_offset = L.offset;
    int N = L.total;
    out.block_of.resize(N);
    out.sub_of.resize(N);
    out.rep_elem.resize(N);
    std::vector<int> m1(N);
    for (size_t b = 0; b < L.spaces.size(); ++b)
        for (int c = 0; c < L.spaces[b].count(); ++c) {
            int x = L.offset[b] + c;
            out.block_of[x] = L.fam_of_block[b];
            out.sub_of[x] = L.sub_of_block[b];
            out.rep_elem[x] = L.spaces[b].reps[c];
            auto [ga, gb] = spec.sd.decode(out.rep_elem[x]);
            m1[x] = B->theta(ga, gb, spec.families[L.fam_of_block[b]].rep);
        }
    std::vector<int> blk(N);
    for (size_t b = 0; b < L.spaces.size(); ++b)
        for (int c = 0; c < L.spaces[b].count(); ++c) blk[L.offset[b] + c] = (int)b;

    Solution S;
    S.n = N;
    S.F.assign(N, std::vector<int>(N));
    S.Gt.assign(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x) {
        int t = spec.sd.code(0, m1[x]);
        for (int y = 0; y < N; ++y) {
            S.F[x][y] =
                L.offset[blk[y]] + L.spaces[blk[y]].coset_of[G->mul(t, out.rep_elem[y])];
            int th = B->lambda(m1[x], m1[y]);
            int u = G->inv(spec.sd.code(th, th));
            S.Gt[y][x] =
                L.offset[blk[x]] + L.spaces[blk[x]].coset_of[G->mul(u, out.rep_elem[x])];
        }
    }
    assert_built(B, S);
    out.sol = std::move(S);
    return out;
}

Solution build_from_eta_sigma(const BracePtr& B, const SemidirectProduct& sd,
                              const std::vector<int>& eta, const GroupAction& sigma) {
    int n = B->order();
    require(sigma.group.get() == sd.group.get(), errc::bad_input,
            "sigma must be an action of the semidirect group");
    int N = sigma.degree;
    require((int)eta.size() == N, errc::bad_input, "eta must label every point");
    for (int v : eta)
        require(v >= 0 && v < n, errc::bad_input, "eta value out of range");

    Subgroup gen = subgroup_closure(B->star_group(), eta);
    if (gen.order() != n)
        fail(errc::hypothesis_fails,
             "generation: eta image generates an additive subgroup of order " +
                 std::to_string(gen.order()));

    std::map<std::pair<Perm, Perm>, int> fp;
    for (int b = 0; b < n; ++b) {
        std::pair<Perm, Perm> key{sigma.perm_of[sd.code(0, b)],
                                  sigma.perm_of[sd.code(b, b)]};
        auto it = fp.emplace(key, b);
        if (!it.second)
            fail(errc::hypothesis_fails,
                 "injectivity: elements " + std::to_string(it.first->second) + " and " +
                     std::to_string(b) + " induce the same pair");
    }

    for (int g = 0; g < sd.group->order(); ++g) {
        auto [a, b] = sd.decode(g);
        for (int x = 0; x < N; ++x)
            if (eta[sigma.apply(g, x)] != B->theta(a, b, eta[x]))
                fail(errc::hypothesis_fails,
                     "compatibility: eta fails to intertwine at element " +
                         pair_str(a, b) + " and point " + std::to_string(x));
    }

    Solution S;
    S.n = N;
    S.F.assign(N, std::vector<int>(N));
    S.Gt.assign(N, std::vector<int>(N));
    std::map<int, Perm> inv_cache;
    for (int x = 0; x < N; ++x) {
        const Perm& fx = sigma.perm_of[sd.code(0, eta[x])];
        for (int y = 0; y < N; ++y) S.F[x][y] = fx[y];
    }
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            int m = B->lambda(eta[x], eta[y]);
            auto it = inv_cache.find(m);
            if (it == inv_cache.end())
                it = inv_cache.emplace(m, perm_inverse(sigma.perm_of[sd.code(m, m)])).first;
            S.Gt[y][x] = it->second[x];
        }
    assert_built(B, S);
    return S;
}

std::vector<ConstructionSpec> enumerate_specs(const BracePtr& B, int max_size,
                                              int max_families) {
    if (max_families <= 0) max_families = caps().max_families_per_orbit;
    SemidirectProduct sd = brace_semidirect(B);
    GroupPtr G = sd.group;
    auto orbits = theta_orbits(B);
    int k = (int)orbits.size();
    require(k <= 20, errc::order_cap_exceeded, "too many orbits to enumerate subsets");

    // per-orbit subgroup menus, computed on demand
    std::vector<std::vector<Subgroup>> menu(k);
    std::vector<char> have_menu(k, 0);
    auto menu_of = [&](int i) -> const std::vector<Subgroup>& {
        if (!have_menu[i]) {
            Subgroup st = stabilizer_in_G(B, sd, orbits[i][0]);
            GroupPtr sg = subgroup_as_group(st); // cap checked by all_subgroups
            std::vector<Subgroup> local = all_subgroups(sg);
            for (const auto& Hs : local) {
                std::vector<char> mask(G->order(), 0);
                for (int e : Hs.elems) mask[st.elems[e]] = 1;
                menu[i].push_back(subgroup_from_mask(G, std::move(mask)));
            }
            have_menu[i] = 1;
        }
        return menu[i];
    };

    std::vector<ConstructionSpec> out;
    for (int mask = 1; mask < (1 << k); ++mask) {
        std::vector<int> chosen;
        std::vector<int> span;
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) {
                chosen.push_back(i);
                for (int x : orbits[i]) span.push_back(x);
            }
        if (subgroup_closure(B->star_group(), span).order() != B->order()) continue;

        // multisets of subgroup indices per chosen orbit, sizes 1..max_families
        std::vector<std::vector<std::vector<int>>> tuples(chosen.size());
        for (size_t c = 0; c < chosen.size(); ++c) {
            int m = (int)menu_of(chosen[c]).size();
            for (int s = 1; s <= max_families; ++s) {
                std::vector<int> t(s, 0);
                while (true) {
                    tuples[c].push_back(t);
                    int pos = s - 1;
                    while (pos >= 0 && t[pos] == m - 1) --pos;
                    if (pos < 0) break;
                    ++t[pos];
                    for (int q = pos + 1; q < s; ++q) t[q] = t[pos];
                }
            }
        }

        std::vector<size_t> odo(chosen.size(), 0);
        while (true) {
            ConstructionSpec spec;
            spec.brace = B;
            spec.sd = sd;
            long long size = 0;
            for (size_t c = 0; c < chosen.size(); ++c) {
                OrbitFamily fam;
                fam.rep = orbits[chosen[c]][0];
                for (int idx : tuples[c][odo[c]]) {
                    fam.subs.push_back(menu_of(chosen[c])[idx]);
                    size += G->order() / fam.subs.back().order();
                }
                spec.families.push_back(std::move(fam));
            }
            if ((max_size <= 0 || size <= max_size) && !validate_spec(spec))
                out.push_back(std::move(spec));

            size_t c = chosen.size();
            while (c > 0 && odo[c - 1] + 1 == tuples[c - 1].size()) odo[--c] = 0;
            if (c == 0) break;
            ++odo[c - 1];
        }
    }
    return out;
}

std::vector<Solution> classify_solutions(const BracePtr& B, int max_size,
                                         int max_families,
                                         std::vector<ConstructionSpec>* specs_out) {
    auto specs = enumerate_specs(B, max_size, max_families);
    std::vector<BuiltSolution> kept;
    std::vector<ConstructionSpec> kept_spec;
    for (auto& spec : specs) {
        BuiltSolution built = build_solution(spec);
        bool fresh = true;
        for (size_t k2 = 0; k2 < kept.size() && fresh; ++k2) {
            if (kept[k2].sol.n != built.sol.n) continue;
            if (solution_isomorphism(kept[k2].sol, built.sol)) {
                fresh = false;
                // corroborate the dedupe with a certificate when one exists
                if (auto cert = find_iso_certificate(kept_spec[k2], spec)) {
                    std::string why;
                    require(check_iso_certificate(kept_spec[k2], spec, *cert, &why),
                            errc::internal, "found certificate rejected: " + why);
                }
            }
        }
        if (fresh) {
            kept.push_back(std::move(built));
            kept_spec.push_back(spec);
        }
    }
    std::vector<size_t> order(kept.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const Solution& A = kept[a].sol;
        const Solution& Bs = kept[b].sol;
        if (A.n != Bs.n) return A.n < Bs.n;
        if (A.F != Bs.F) return A.F < Bs.F;
        return A.Gt < Bs.Gt;
    });
    std::vector<Solution> out;
    for (size_t i : order) out.push_back(std::move(kept[i].sol));
    if (specs_out) {
        specs_out->clear();
        for (size_t i : order) specs_out->push_back(std::move(kept_spec[i]));
    }
    return out;
}

namespace {

bool brace_iso_valid(const SkewBrace& A, const SkewBrace& B, const Perm& psi) {
    int n = A.order();
    if ((int)psi.size() != n || B.order() != n || !is_permutation(psi)) return false;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (psi[A.star(a, b)] != B.star(psi[a], psi[b])) return false;
            if (psi[A.dot(a, b)] != B.dot(psi[a], psi[b])) return false;
        }
    return true;
}

std::vector<int> conjugated_set(GroupPtr G, const std::vector<int>& elems, int w) {
    std::vector<int> out;
    out.reserve(elems.size());
    int wi = G->inv(w);
    for (int x : elems) out.push_back(G->mul(G->mul(w, x), wi));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> psi_image_set(const SemidirectProduct& sd_a, const SemidirectProduct& sd_b,
                               const Perm& psi, const std::vector<int>& elems) {
    std::vector<int> out;
    out.reserve(elems.size());
    for (int g : elems) {
        auto [a, b] = sd_a.decode(g);
        out.push_back(sd_b.code(psi[a], psi[b]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool check_iso_certificate(const ConstructionSpec& A, const ConstructionSpec& B,
                           const IsoCertificate& cert, std::string* why) {
    auto reject = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    size_t k = A.families.size();
    if (B.families.size() != k) return reject("orbit counts differ");
    if (!brace_iso_valid(*A.brace, *B.brace, cert.psi))
        return reject("psi is not a brace isomorphism");
    if (cert.alpha.size() != k || !is_permutation(cert.alpha))
        return reject("alpha is not a bijection between the orbit sets");
    if (cert.beta.size() != k || cert.witness.size() != k)
        return reject("certificate shape mismatch");

    for (size_t i = 0; i < k; ++i) {
        const auto& fa = A.families[i];
        const auto& fb = B.families[cert.alpha[i]];
        size_t J = fa.subs.size();
        if (fb.subs.size() != J || cert.beta[i].size() != J ||
            cert.witness[i].size() != J)
            return reject("family sizes differ at orbit " + std::to_string(i));
        if (!is_permutation(cert.beta[i]))
            return reject("beta is not a bijection at orbit " + std::to_string(i));
        for (size_t j = 0; j < J; ++j) {
            auto [y, z] = cert.witness[i][j];
            if (y < 0 || y >= B.brace->order() || z < 0 || z >= B.brace->order())
                return reject("witness out of range at orbit " + std::to_string(i));
            if (cert.psi[fa.rep] != B.brace->theta(y, z, fb.rep))
                return reject("equation (1) fails at orbit " + std::to_string(i) +
                              " family " + std::to_string(j));
            int w = B.sd.code(y, z);
            std::vector<int> lhs =
                psi_image_set(A.sd, B.sd, cert.psi, fa.subs[j].elems);
            std::vector<int> rhs = conjugated_set(
                B.sd.group, fb.subs[cert.beta[i][j]].elems, w);
            if (lhs != rhs)
                return reject("equation (2) fails at orbit " + std::to_string(i) +
                              " family " + std::to_string(j));
        }
    }
    return true;
}

Perm certified_map(const ConstructionSpec& A, const ConstructionSpec& B,
                   const IsoCertificate& cert) {
    std::string why;
    require(check_iso_certificate(A, B, cert, &why), errc::certificate_invalid, why);
    BuiltSolution b_a = build_solution(A);
    BuiltSolution b_b = build_solution(B);
    BlockLayout LB = layout_blocks(B.sd.group, B.families);

    // flat block index within B for a (family, sub) pair
    std::vector<std::vector<int>> flat(B.families.size());
    {
        int blk = 0;
        for (size_t i = 0; i < B.families.size(); ++i)
            for (size_t j = 0; j < B.families[i].subs.size(); ++j)
                flat[i].push_back(blk++);
    }

    int N = b_a.sol.n;
    require(b_b.sol.n == N, errc::certificate_invalid, "built sizes differ");
    Perm Fm(N);
    for (int x = 0; x < N; ++x) {
        int i = b_a.block_of[x], j = b_a.sub_of[x];
        auto [ba, ca] = A.sd.decode(b_a.rep_elem[x]);
        auto [wy, wz] = cert.witness[i][j];
        int g2 = B.sd.group->mul(B.sd.code(cert.psi[ba], cert.psi[ca]),
                                 B.sd.code(wy, wz));
        int blk = flat[cert.alpha[i]][cert.beta[i][j]];
        Fm[x] = LB.offset[blk] + LB.spaces[blk].coset_of[g2];
    }
    require(is_permutation(Fm), errc::internal, "certified map is not bijective");
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            require(Fm[b_a.sol.F[x][y]] == b_b.sol.F[Fm[x]][Fm[y]], errc::internal,
                    "certified map does not intertwine f");
            require(Fm[b_a.sol.Gt[y][x]] == b_b.sol.Gt[Fm[y]][Fm[x]], errc::internal,
                    "certified map does not intertwine g");
        }
    return Fm;
}

std::optional<IsoCertificate> find_iso_certificate(const ConstructionSpec& A,
                                                   const ConstructionSpec& B) {
    auto phi0 = brace_isomorphism(A.brace, B.brace);
    if (!phi0) return std::nullopt;
    auto auts = brace_automorphisms(B.brace);

    auto orbitsB = theta_orbits(B.brace);
    std::vector<int> orbit_id(B.brace->order());
    for (size_t i = 0; i < orbitsB.size(); ++i)
        for (int x : orbitsB[i]) orbit_id[x] = (int)i;
    std::map<int, int> fam_of_orbit;
    for (size_t i = 0; i < B.families.size(); ++i)
        fam_of_orbit[orbit_id[B.families[i].rep]] = (int)i;

    size_t k = A.families.size();
    if (B.families.size() != k) return std::nullopt;
    GroupPtr G = B.sd.group;

    for (const auto& beta_aut : auts) {
        Perm psi = perm_compose(beta_aut, *phi0);
        IsoCertificate cert;
        cert.psi = psi;
        cert.alpha.assign(k, -1);
        cert.beta.assign(k, {});
        cert.witness.assign(k, {});
        bool ok = true;
        for (size_t i = 0; i < k && ok; ++i) {
            auto it = fam_of_orbit.find(orbit_id[psi[A.families[i].rep]]);
            if (it == fam_of_orbit.end()) {
                ok = false;
                break;
            }
            cert.alpha[i] = it->second;
            if (B.families[it->second].subs.size() != A.families[i].subs.size())
                ok = false;
        }
        if (!ok) continue;
        {
            std::set<int> distinct(cert.alpha.begin(), cert.alpha.end());
            if (distinct.size() != k) continue;
        }

        bool all_matched = true;
        for (size_t i = 0; i < k && all_matched; ++i) {
            const auto& fa = A.families[i];
            const auto& fb = B.families[cert.alpha[i]];
            size_t J = fa.subs.size();
            std::vector<int> perm_idx(J);
            for (size_t j = 0; j < J; ++j) perm_idx[j] = (int)j;
            bool family_done = false;
            do {
                std::vector<std::pair<int, int>> wit(J, {-1, -1});
                bool fits = true;
                for (size_t j = 0; j < J && fits; ++j) {
                    std::vector<int> lhs =
                        psi_image_set(A.sd, B.sd, psi, fa.subs[j].elems);
                    fits = false;
                    for (int g = 0; g < G->order(); ++g) {
                        auto [y, z] = B.sd.decode(g);
                        if (psi[fa.rep] != B.brace->theta(y, z, fb.rep)) continue;
                        if (lhs != conjugated_set(G, fb.subs[perm_idx[j]].elems, g))
                            continue;
                        wit[j] = {y, z};
                        fits = true;
                        break;
                    }
                }
                if (fits) {
                    cert.beta[i].assign(perm_idx.begin(), perm_idx.end());
                    cert.witness[i] = wit;
                    family_done = true;
                    break;
                }
            } while (std::next_permutation(perm_idx.begin(), perm_idx.end()));
            if (!family_done) all_matched = false;
        }
        if (all_matched) return cert;
    }
    return std::nullopt;
}

bool check_square_free_spec(const ConstructionSpec& spec) {
    GroupPtr G = spec.sd.group;
    const BracePtr& B = spec.brace;
    for (const auto& fam : spec.families)
        for (const auto& K : fam.subs)
            for (int g = 0; g < G->order(); ++g) {
                auto [b, c] = spec.sd.decode(g);
                int m = B->theta(b, c, fam.rep);
                int gi = G->inv(g);
                if (!K.contains(G->mul(G->mul(gi, spec.sd.code(0, m)), g))) return false;
                if (!K.contains(G->mul(G->mul(gi, spec.sd.code(m, m)), g))) return false;
            }
    return true;
}

namespace {

std::vector<std::vector<int>> lambda_orbits(const BracePtr& B) {
    int n = B->order();
    std::vector<Perm> maps;
    for (int b : greedy_generators(*B->dot_group())) {
        Perm p(n);
        for (int c = 0; c < n; ++c) p[c] = B->lambda(b, c);
        maps.push_back(std::move(p));
    }
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> orbits;
    for (int pt = 0; pt < n; ++pt) {
        if (seen[pt]) continue;
        std::vector<int> orb{pt};
        seen[pt] = 1;
        for (size_t head = 0; head < orb.size(); ++head)
            for (const auto& p : maps) {
                int q = p[orb[head]];
                if (!seen[q]) {
                    seen[q] = 1;
                    orb.push_back(q);
                }
            }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

Subgroup lambda_stabilizer(const BracePtr& B, int pt) {
    std::vector<char> mask(B->order(), 0);
    for (int c = 0; c < B->order(); ++c)
        if (B->lambda(c, pt) == pt) mask[c] = 1;
    return subgroup_from_mask(B->dot_group(), std::move(mask));
}

} // namespace

std::optional<SpecViolation> validate_involutive_spec(const InvolutiveSpec& spec) {
    const BracePtr& B = spec.brace;
    int n = B->order();
    if (!B->star_abelian())
        return SpecViolation{errc::not_a_left_brace, "the additive group is not abelian"};
    if (spec.families.empty())
        return SpecViolation{errc::spec_invalid, "no orbit families given"};

    auto orbits = lambda_orbits(B);
    std::vector<int> orbit_id(n);
    for (size_t i = 0; i < orbits.size(); ++i)
        for (int x : orbits[i]) orbit_id[x] = (int)i;

    std::set<int> used;
    for (const auto& fam : spec.families) {
        if (fam.rep < 0 || fam.rep >= n)
            return SpecViolation{errc::spec_invalid, "orbit representative out of range"};
        if (fam.subs.empty())
            return SpecViolation{errc::spec_invalid,
                                 "representative " + std::to_string(fam.rep) +
                                     " has no subgroups"};
        if (!used.insert(orbit_id[fam.rep]).second)
            return SpecViolation{errc::spec_invalid,
                                 "representative " + std::to_string(fam.rep) +
                                     " repeats an orbit"};
    }

    std::vector<int> span;
    for (const auto& fam : spec.families)
        for (int x : orbits[orbit_id[fam.rep]]) span.push_back(x);
    Subgroup gen = subgroup_closure(B->star_group(), span);
    if (gen.order() != n)
        return SpecViolation{errc::generation_fails,
                             "chosen orbits generate an additive subgroup of order " +
                                 std::to_string(gen.order()) + " of " + std::to_string(n)};

    for (const auto& fam : spec.families) {
        Subgroup st = lambda_stabilizer(B, fam.rep);
        for (size_t j = 0; j < fam.subs.size(); ++j) {
            const Subgroup& K = fam.subs[j];
            require(K.parent.get() == B->dot_group().get(), errc::bad_input,
                    "subgroup lives in the wrong group");
            for (int c : K.elems)
                if (!st.contains(c))
                    return SpecViolation{errc::containment_fails,
                                         "subgroup " + std::to_string(j) +
                                             " of representative " + std::to_string(fam.rep) +
                                             " contains " + std::to_string(c) +
                                             " which moves the representative"};
        }
    }

    std::vector<char> joint(n, 1);
    for (const auto& fam : spec.families)
        for (const auto& K : fam.subs) {
            Subgroup c = normal_core(B->dot_group(), K);
            for (int g = 0; g < n; ++g)
                if (!c.contains(g)) joint[g] = 0;
        }
    for (int a = 1; a < n; ++a)
        if (joint[a])
            return SpecViolation{errc::core_fails,
                                 "element " + std::to_string(a) +
                                     " survives in every normal core"};
    return std::nullopt;
}

BuiltSolution build_involutive(const InvolutiveSpec& spec) {
    if (auto v = validate_involutive_spec(spec)) {
        if (v->code == errc::not_a_left_brace) fail(v->code, v->detail);
        fail(errc::spec_invalid, "invalid spec: " + v->detail);
    }
    const BracePtr& B = spec.brace;
    GroupPtr D = B->dot_group();
    BlockLayout L = layout_blocks(D, spec.families);

    BuiltSolution out;
    out.block_offset = L.offset;
    int N = L.total;
    out.block_of.resize(N);
    out.sub_of.resize(N);
    out.rep_elem.resize(N);
    std::vector<int> blk(N), t(N);
    for (size_t b = 0; b < L.spaces.size(); ++b)
        for (int c = 0; c < L.spaces[b].count(); ++c) {
            int x = L.offset[b] + c;
            blk[x] = (int)b;
            out.block_of[x] = L.fam_of_block[b];
            out.sub_of[x] = L.sub_of_block[b];
            out.rep_elem[x] = L.spaces[b].reps[c];
            t[x] = B->lambda(out.rep_elem[x], spec.families[L.fam_of_block[b]].rep);
        }

    Solution S;
    S.n = N;
    S.F.assign(N, std::vector<int>(N));
    S.Gt.assign(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            S.F[x][y] =
                L.offset[blk[y]] + L.spaces[blk[y]].coset_of[D->mul(t[x], out.rep_elem[y])];

    std::vector<Perm> finv(N);
    for (int z = 0; z < N; ++z) {
        require(is_permutation(S.F[z]), errc::internal, "built f row is not bijective");
        finv[z] = perm_inverse(S.F[z]);
    }
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) S.Gt[y][x] = finv[S.F[x][y]][x];

    // closed form for g, checked against the inverse-of-f definition
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            int m = D->mul(t[x], out.rep_elem[y]);
            int ai2 = spec.families[out.block_of[y]].rep;
            int u = D->inv(B->lambda(m, ai2));
            int direct =
                L.offset[blk[x]] + L.spaces[blk[x]].coset_of[D->mul(u, out.rep_elem[x])];
            require(direct == S.Gt[y][x], errc::internal,
                    "closed form for g disagrees with the inverse formula");
        }

    require(is_involutive(S), errc::internal, "built solution is not involutive");
    assert_built(B, S);
    out.sol = std::move(S);
    return out;
}

ConstructionSpec lift_involutive_spec(const InvolutiveSpec& spec,
                                      const SemidirectProduct& sd) {
    ConstructionSpec out;
    out.brace = spec.brace;
    out.sd = sd;
    int n = spec.brace->order();
    for (const auto& fam : spec.families) {
        OrbitFamily lifted;
        lifted.rep = fam.rep;
        for (const auto& K : fam.subs) {
            std::vector<char> mask(sd.group->order(), 0);
            for (int b = 0; b < n; ++b)
                for (int c : K.elems) mask[sd.code(b, c)] = 1;
            lifted.subs.push_back(subgroup_from_mask(sd.group, std::move(mask)));
        }
        out.families.push_back(std::move(lifted));
    }
    return out;
}

ConstructionSpec canonical_spec(const BracePtr& B) {
    ConstructionSpec spec;
    spec.brace = B;
    spec.sd = brace_semidirect(B);
    std::vector<char> triv(spec.sd.group->order(), 0);
    triv[0] = 1;
    for (const auto& orb : theta_orbits(B)) {
        OrbitFamily fam;
        fam.rep = orb[0];
        fam.subs.push_back(subgroup_from_mask(spec.sd.group, triv));
        spec.families.push_back(std::move(fam));
    }
    return spec;
}

InvolutiveSpec canonical_involutive_spec(const BracePtr& B) {
    require(B->star_abelian(), errc::not_a_left_brace,
            "the additive group is not abelian");
    InvolutiveSpec spec;
    spec.brace = B;
    std::vector<char> triv(B->order(), 0);
    triv[0] = 1;
    for (const auto& orb : lambda_orbits(B)) {
        OrbitFamily fam;
        fam.rep = orb[0];
        fam.subs.push_back(subgroup_from_mask(B->dot_group(), triv));
        spec.families.push_back(std::move(fam));
    }
    return spec;
}

BuiltSolution build_irretractable(const BracePtr& B, const std::vector<int>& reps) {
    require(B->star_abelian(), errc::not_a_left_brace,
            "the additive group is not abelian");
    require(socle(B).order() == 1, errc::socle_not_trivial,
            "the socle must be trivial");
    auto orbits = lambda_orbits(B);
    std::vector<int> orbit_id(B->order());
    for (size_t i = 0; i < orbits.size(); ++i)
        for (int x : orbits[i]) orbit_id[x] = (int)i;

    std::vector<int> chosen;
    if (reps.empty()) {
        for (const auto& orb : orbits) chosen.push_back(orb[0]);
    } else {
        std::set<int> ids;
        for (int r : reps) {
            require(r >= 0 && r < B->order(), errc::bad_input,
                    "representative out of range");
            require(ids.insert(orbit_id[r]).second, errc::spec_invalid,
                    "two representatives share an orbit");
            chosen.push_back(orbits[orbit_id[r]][0]);
        }
    }

    InvolutiveSpec spec;
    spec.brace = B;
    for (int r : chosen) {
        OrbitFamily fam;
        fam.rep = r;
        fam.subs.push_back(lambda_stabilizer(B, r));
        spec.families.push_back(std::move(fam));
    }
    BuiltSolution out = build_involutive(spec);
    require(is_irretractable(out.sol), errc::internal,
            "full-stabilizer solution failed to be irretractable");
    return out;
}

RackBuilt rack_from_group(GroupPtr G, const std::vector<OrbitFamily>& families) {
    require(!families.empty(), errc::bad_input, "no conjugacy class families given");
    auto classes = conjugacy_classes(G);
    std::vector<int> class_id(G->order());
    for (size_t i = 0; i < classes.size(); ++i)
        for (int x : classes[i]) class_id[x] = (int)i;

    std::set<int> used;
    std::vector<int> span;
    for (const auto& fam : families) {
        require(fam.rep >= 0 && fam.rep < G->order(), errc::bad_input,
                "class representative out of range");
        require(!fam.subs.empty(), errc::bad_input,
                "representative " + std::to_string(fam.rep) + " has no subgroups");
        require(used.insert(class_id[fam.rep]).second, errc::spec_invalid,
                "two representatives share a conjugacy class");
        for (int x : classes[class_id[fam.rep]]) span.push_back(x);
    }
    Subgroup gen = subgroup_closure(G, span);
    if (gen.order() != G->order())
        fail(errc::generation_fails,
             "chosen classes generate a subgroup of order " + std::to_string(gen.order()) +
                 " of " + std::to_string(G->order()));

    for (const auto& fam : families) {
        Subgroup cent = centralizer(G, fam.rep);
        for (const auto& K : fam.subs) {
            require(K.parent.get() == G.get(), errc::bad_input,
                    "subgroup lives in the wrong group");
            for (int x : K.elems)
                if (!cent.contains(x))
                    fail(errc::containment_fails,
                         "subgroup element " + std::to_string(x) +
                             " does not centralize " + std::to_string(fam.rep));
        }
    }

    std::vector<char> inter(G->order(), 1);
    for (const auto& fam : families)
        for (const auto& K : fam.subs)
            for (int g = 0; g < G->order(); ++g)
                if (!K.contains(g)) inter[g] = 0;
    Subgroup joint = subgroup_from_mask(G, std::move(inter));
    Subgroup c = normal_core(G, joint);
    if (c.order() != 1)
        fail(errc::core_fails, "the intersection of the subgroups has a core of order " +
                                   std::to_string(c.order()));

    BlockLayout L = layout_blocks(G, families);
    RackBuilt out;
    int N = L.total;
    out.block_of.resize(N);
    out.rep_elem.resize(N);
    std::vector<int> blk(N);
    for (size_t b = 0; b < L.spaces.size(); ++b)
        for (int cc = 0; cc < L.spaces[b].count(); ++cc) {
            int x = L.offset[b] + cc;
            blk[x] = (int)b;
            out.block_of[x] = L.fam_of_block[b];
            out.rep_elem[x] = L.spaces[b].reps[cc];
        }
    out.circ.assign(N, std::vector<int>(N));
    for (int u = 0; u < N; ++u) {
        int gi = families[out.block_of[u]].rep;
        int xu = out.rep_elem[u];
        int cu = G->mul(G->mul(xu, G->inv(gi)), G->inv(xu));
        for (int v = 0; v < N; ++v)
            out.circ[u][v] =
                L.offset[blk[v]] + L.spaces[blk[v]].coset_of[G->mul(cu, out.rep_elem[v])];
    }
    require(is_rack(out.circ), errc::internal, "built table is not a rack");
    bool quandle = true;
    for (const auto& fam : families)
        for (const auto& K : fam.subs)
            if (!K.contains(fam.rep)) quandle = false;
    require(quandle == is_quandle(out.circ), errc::internal,
            "quandle condition disagrees with the table");
    out.quandle = quandle;
    return out;
}

RecoveredSpec spec_of_solution(const Solution& S) {
    PermutationBrace P = permutation_brace(S);
    BracePtr B = P.brace;
    SemidirectProduct sd = brace_semidirect(B);
    int n = B->order();
    int N = S.n;

    std::vector<Perm> perms(sd.group->order());
    for (int g = 0; g < sd.group->order(); ++g) {
        auto [a, b] = sd.decode(g);
        perms[g] = perm_compose(
            P.pair_of[a].second,
            perm_compose(perm_inverse(P.pair_of[a].first), P.pair_of[b].first));
    }
    GroupAction sigma = make_action(sd.group, N, std::move(perms));

    for (int g = 0; g < sd.group->order(); ++g) {
        auto [a, b] = sd.decode(g);
        for (int x = 0; x < N; ++x)
            require(P.gen_of[sigma.apply(g, x)] == B->theta(a, b, P.gen_of[x]),
                    errc::internal, "labels fail to intertwine with the action");
    }

    auto orbitsB = theta_orbits(B);
    std::vector<int> orbit_id(n);
    for (size_t i = 0; i < orbitsB.size(); ++i)
        for (int x : orbitsB[i]) orbit_id[x] = (int)i;

    auto point_orbits = action_orbits(sigma);
    struct OrbitData {
        int a_i;
        int base_point;
        Subgroup K;
    };
    std::map<int, std::vector<OrbitData>> grouped; // theta orbit id -> entries
    for (const auto& orb : point_orbits) {
        std::set<int> image;
        for (int x : orb) image.insert(P.gen_of[x]);
        int oid = orbit_id[*image.begin()];
        std::vector<int> expect = orbitsB[oid];
        require(std::vector<int>(image.begin(), image.end()) == expect, errc::internal,
                "labels of an orbit do not fill a full orbit");
        int a_i = expect[0];
        int base = -1;
        for (int x : orb)
            if (P.gen_of[x] == a_i) {
                base = x;
                break;
            }
        grouped[oid].push_back({a_i, base, stabilizer_of(sigma, base)});
    }

    RecoveredSpec out;
    out.spec.brace = B;
    out.spec.sd = sd;
    std::vector<std::pair<int, int>> base_points; // aligned with flat blocks
    for (auto& [oid, list] : grouped) {
        OrbitFamily fam;
        fam.rep = list[0].a_i;
        for (auto& entry : list) {
            fam.subs.push_back(std::move(entry.K));
            base_points.push_back({(int)out.spec.families.size(), entry.base_point});
        }
        out.spec.families.push_back(std::move(fam));
    }
    require(!validate_spec(out.spec), errc::internal,
            "recovered spec fails validation");

    BuiltSolution built = build_solution(out.spec);
    require(built.sol.n == N, errc::internal, "recovered spec has the wrong size");

    // block index -> base point (blocks are flattened in family order, which
    // matches the insertion order of base_points above)
    Perm map(N);
    {
        std::vector<int> blk_of_point(N);
        int blk = 0;
        std::vector<int> per_block_base;
        for (size_t i = 0, bp = 0; i < out.spec.families.size(); ++i)
            for (size_t j = 0; j < out.spec.families[i].subs.size(); ++j, ++bp) {
                (void)blk;
                per_block_base.push_back(base_points[bp].second);
            }
        for (int x = 0; x < N; ++x) {
            int b = 0;
            {
                int fi = built.block_of[x], sj = built.sub_of[x];
                int cnt = 0;
                for (int i2 = 0; i2 < fi; ++i2)
                    cnt += (int)out.spec.families[i2].subs.size();
                b = cnt + sj;
            }
            map[x] = sigma.apply(built.rep_elem[x], per_block_base[b]);
        }
    }
    require(is_permutation(map), errc::internal, "recovered point map is not bijective");
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            require(map[built.sol.F[x][y]] == S.F[map[x]][map[y]], errc::internal,
                    "recovered map does not intertwine f");
            require(map[built.sol.Gt[y][x]] == S.Gt[map[y]][map[x]], errc::internal,
                    "recovered map does not intertwine g");
        }
    out.point_map = std::move(map);
    return out;
}

InvolutiveSpec vendramin_involutive_spec() {
    BracePtr B = vendramin_brace();
    InvolutiveSpec spec;
    spec.brace = B;
    for (int rep : {4, 32}) { // the orbits of e3 and e6
        OrbitFamily fam;
        fam.rep = rep;
        fam.subs.push_back(lambda_stabilizer(B, rep));
        spec.families.push_back(std::move(fam));
    }
    return spec;
}

BuiltSolution vendramin_solution() { return build_involutive(vendramin_involutive_spec()); }

} // namespace brachyon
