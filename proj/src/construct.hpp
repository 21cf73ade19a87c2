#pragma once

#include "solution.hpp"

namespace brachyon {

// G = (B,*) x| (B,.) through lambda, elements coded a*|B|+b.
SemidirectProduct brace_semidirect(const BracePtr& B);
GroupAction theta_action(const BracePtr& B, const SemidirectProduct& sd);

// Orbits of the Theta maps on the carrier, computed from generator maps
// (star conjugations and lambdas) without building the semidirect group.
std::vector<std::vector<int>> theta_orbits(const BracePtr& B);

// Elements (a,b) of G with Theta_{(a,b)}(pt) = pt.
Subgroup stabilizer_in_G(const BracePtr& B, const SemidirectProduct& sd, int pt);

struct OrbitFamily {
    int rep = 0;                 // orbit representative a_i
    std::vector<Subgroup> subs;  // K_{i,1..} inside the stabilizer of rep
};

struct ConstructionSpec {
    BracePtr brace;
    SemidirectProduct sd;
    std::vector<OrbitFamily> families;
};

struct SpecViolation {
    errc code = errc::none;
    std::string detail;
};
std::optional<SpecViolation> validate_spec(const ConstructionSpec& spec);

// Points of the built solution, block by block; kept so certificates and
// round-trip checks can talk about the cosets behind each point.
struct BuiltSolution {
    Solution sol;
    std::vector<int> block_of;    // family index
    std::vector<int> sub_of;      // index of K within its family
    std::vector<int> rep_elem;    // minimal coset representative in G
    std::vector<int> block_offset; // per (flattened) block
};

BuiltSolution build_solution(const ConstructionSpec& spec);

// Solution from an explicit generating map eta: X -> B and an action sigma of
// G on X; the three hypotheses are checked and named on failure.
Solution build_from_eta_sigma(const BracePtr& B, const SemidirectProduct& sd,
                              const std::vector<int>& eta, const GroupAction& sigma);

// All valid specs over B: generating orbit subsets in bitmask order, subgroup
// multisets per orbit ascending. max_size <= 0 means unrestricted.
std::vector<ConstructionSpec> enumerate_specs(const BracePtr& B, int max_size,
                                              int max_families);

std::vector<Solution> classify_solutions(const BracePtr& B, int max_size,
                                         int max_families,
                                         std::vector<ConstructionSpec>* specs_out = nullptr);

struct IsoCertificate {
    Perm psi;                             // brace isomorphism
    std::vector<int> alpha;               // orbit matching
    std::vector<std::vector<int>> beta;   // family matching per orbit
    std::vector<std::vector<std::pair<int, int>>> witness; // (y,z) per (i,j)
};
bool check_iso_certificate(const ConstructionSpec& A, const ConstructionSpec& B,
                           const IsoCertificate& cert, std::string* why = nullptr);
Perm certified_map(const ConstructionSpec& A, const ConstructionSpec& B,
                   const IsoCertificate& cert);
std::optional<IsoCertificate> find_iso_certificate(const ConstructionSpec& A,
                                                   const ConstructionSpec& B);

bool check_square_free_spec(const ConstructionSpec& spec);

// Left-brace data: subgroups live in the multiplicative group inside the
// lambda stabilizers.
struct InvolutiveSpec {
    BracePtr brace;
    std::vector<OrbitFamily> families;
};
std::optional<SpecViolation> validate_involutive_spec(const InvolutiveSpec& spec);
BuiltSolution build_involutive(const InvolutiveSpec& spec);
ConstructionSpec lift_involutive_spec(const InvolutiveSpec& spec,
                                      const SemidirectProduct& sd);

// Trivial-stabilizer spec over every orbit: always valid, X has |G| points
// per orbit (or |B| points for the involutive variant).
ConstructionSpec canonical_spec(const BracePtr& B);
InvolutiveSpec canonical_involutive_spec(const BracePtr& B);

// Full-stabilizer one-family spec over the chosen lambda-orbits (all orbits
// when reps is empty); needs a left brace with trivial socle and delivers an
// irretractable solution.
BuiltSolution build_irretractable(const BracePtr& B, const std::vector<int>& reps = {});

// Conjugation racks on unions of coset spaces: rep g_i per conjugacy class,
// subgroups inside the centralizers.
struct RackBuilt {
    std::vector<std::vector<int>> circ;
    std::vector<int> block_of;
    std::vector<int> rep_elem;
    bool quandle = false;
};
RackBuilt rack_from_group(GroupPtr G, const std::vector<OrbitFamily>& families);

// Reverse direction: read a spec off a non-degenerate solution through its
// permutation brace; the returned point map sends built points to S.
struct RecoveredSpec {
    ConstructionSpec spec;
    Perm point_map;
};
RecoveredSpec spec_of_solution(const Solution& S);

InvolutiveSpec vendramin_involutive_spec();
BuiltSolution vendramin_solution(); // 8 points, square-free, irretractable

} // namespace brachyon
