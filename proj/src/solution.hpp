#pragma once

#include "brace.hpp"

namespace brachyon {

// Set-theoretic map r(x,y) = (f_x(y), g_y(x)) given by two tables:
// F[x][y] = f_x(y) and Gt[y][x] = g_y(x).
struct Solution {
    int n = 0;
    std::vector<std::vector<int>> F;
    std::vector<std::vector<int>> Gt;
};

void check_solution_shape(const Solution& S); // sizes and ranges
bool r_bijective(const Solution& S);

struct YbeReport {
    bool ok = true;
    int eq = 0; // 1..3, the first failing component equation
    int x = -1, y = -1, z = -1;
};
// Checks the three component equations on all triples and cross-checks the
// result against the direct braid relation r1 r2 r1 = r2 r1 r2.
YbeReport verify_ybe(const Solution& S);

bool is_nondegenerate(const Solution& S);
bool is_involutive(const Solution& S);
bool is_square_free(const Solution& S);

// gtilde_x(y) = g_{f_y^{-1}(x)}(y); the pair maps x -> (f_x, gtilde_x^{-1})
// generate the permutation group of the solution.
std::vector<Perm> gtilde_all(const Solution& S);

struct PermutationBrace {
    BracePtr brace;
    std::vector<int> gen_of;                     // index of the pair of x
    std::vector<std::pair<Perm, Perm>> pair_of;  // element -> (first, second)
};
PermutationBrace permutation_brace(const Solution& S);

Solution retraction(const Solution& S, std::vector<int>* class_of = nullptr);
bool is_irretractable(const Solution& S);

// y o x = f_y(g_{f_x^{-1}(y)}(x)); rows are left operands: circ[y][x] = y o x.
std::vector<std::vector<int>> derived_rack(const Solution& S);

bool is_rack(const std::vector<std::vector<int>>& circ);
bool is_quandle(const std::vector<std::vector<int>>& circ);
bool is_birack(const std::vector<std::vector<int>>& circ,
               const std::vector<std::vector<int>>& star);

// Lexicographically least isomorphism (as an image vector), if any.
std::optional<Perm> solution_isomorphism(const Solution& A, const Solution& B);

Solution associated_solution(const BracePtr& B);      // left braces only
Solution skew_associated_solution(const BracePtr& B); // (lambda_a(b), gamma_b(a))

} // namespace brachyon
