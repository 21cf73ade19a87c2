#pragma once

#include "group.hpp"

#include <array>
#include <memory>
#include <optional>

namespace brachyon {

class SkewBrace;
using BracePtr = std::shared_ptr<const SkewBrace>;

// Two group structures on one carrier, identity shared at index 0, tied by
// a . (b * c) = (a . b) * a^- * (a . c)   (a^- the star inverse of a).
// make() validates both tables, the shared identity, the axiom on all
// triples, and precomputes the lambda and gamma tables with their laws.
class SkewBrace {
public:
    int order() const { return n_; }
    GroupPtr star_group() const { return star_; }
    GroupPtr dot_group() const { return dot_; }
    int star(int a, int b) const { return star_->mul(a, b); }
    int dot(int a, int b) const { return dot_->mul(a, b); }
    int star_inv(int a) const { return star_->inv(a); }
    int dot_inv(int a) const { return dot_->inv(a); }

    // lambda_a(b) = a^- * (a . b), an automorphism of the star group
    int lambda(int a, int b) const { return lam_[a * n_ + b]; }
    int lambda_inv(int a, int b) const { return lam_inv_[a * n_ + b]; }
    // gamma_b(a) = ((b^{-1} . a^{-1}) * (b^{-1})^-)^{-1}, inverses in dot
    int gamma(int b, int a) const { return gam_[b * n_ + a]; }
    // Theta_{(a,b)}(c) = a * lambda_b(c) * a^-
    int theta(int a, int b, int c) const {
        return star(star(a, lambda(b, c)), star_inv(a));
    }

    bool star_abelian() const { return star_abelian_; }

    static BracePtr make(const std::vector<std::vector<int>>& star_rows,
                         const std::vector<std::vector<int>>& dot_rows);

private:
    int n_ = 0;
    GroupPtr star_, dot_;
    std::vector<int> lam_, lam_inv_, gam_;
    bool star_abelian_ = false;
};

// First triple (a,b,c) with (b*c).a != (b.a) * a^- * (c.a), if any.
std::optional<std::array<int, 3>> two_sided_violation(const BracePtr& B);
inline bool is_two_sided(const BracePtr& B) { return !two_sided_violation(B); }

// The lambda maps as a validated action of the dot group on the carrier.
GroupAction lambda_action(const BracePtr& B);

// Elements with lambda_a = id that are star-central; cross-checked against
// the kernels of a -> (lambda_a, gamma_a) and a -> (lambda_a, h_a) and
// asserted to be an ideal. Subgroup of the star group.
Subgroup socle(const BracePtr& B);

bool is_left_ideal(const BracePtr& B, const std::vector<int>& elems);
bool is_ideal(const BracePtr& B, const std::vector<int>& elems);
BracePtr quotient_brace(const BracePtr& B, const std::vector<int>& ideal_elems);

std::vector<int> square_free_elements(const BracePtr& B);

BracePtr trivial_brace(GroupPtr G);
BracePtr opposite_brace(GroupPtr G); // a*b = ba, a.b = ab
BracePtr cyclic_flip_brace(int n);   // on Z/2n: a*b = (-1)^b a + b, dot cyclic
BracePtr order21_brace();
BracePtr vendramin_brace(); // order 64 on (Z/2)^6, trivial socle

// Regular subgroups of the holomorph <-> brace structures on the base.
BracePtr brace_from_regular_subgroup(const Holomorph& hol, const Subgroup& H);
std::vector<BracePtr> enumerate_braces_on(GroupPtr A);

std::optional<Perm> brace_isomorphism(const BracePtr& B1, const BracePtr& B2);
std::vector<Perm> brace_automorphisms(const BracePtr& B);

} // namespace brachyon
