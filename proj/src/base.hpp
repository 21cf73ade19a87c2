#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace brachyon {

enum class errc {
    none = 0,
    bad_input,
    not_latin,
    no_identity_at_zero,
    not_associative,
    order_cap_exceeded,
    not_automorphism_action,
    not_a_subgroup,
    star_invalid,
    dot_invalid,
    axiom_fails,
    not_an_ideal,
    not_regular,
    nondegenerate_required,
    involutive_required,
    not_a_left_brace,
    generation_fails,
    containment_fails,
    core_fails,
    spec_invalid,
    hypothesis_fails,
    certificate_invalid,
    socle_not_trivial,
    parse_error,
    internal,
};

struct Error : std::runtime_error {
    errc code;
    Error(errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
    if (!ok) fail(c, msg);
}

// Order caps for the expensive searches. BRACHYON_CAP_ORDER overrides all of
// them at once; set_cap_override does the same programmatically (CLI flag).
struct Caps {
    int all_subgroups = 64;
    int automorphisms = 64;
    int isomorphism = 128;
    int enumerate_braces = 16;
    int max_families_per_orbit = 2;
};

inline Caps& caps_storage() {
    static Caps c = [] {
        Caps init;
        if (const char* s = std::getenv("BRACHYON_CAP_ORDER")) {
            int v = std::atoi(s);
            if (v > 0) {
                init.all_subgroups = v;
                init.automorphisms = v;
                init.isomorphism = v;
                init.enumerate_braces = v;
            }
        }
        return init;
    }();
    return c;
}

inline const Caps& caps() { return caps_storage(); }

inline void set_cap_override(int v) {
    if (v <= 0) return;
    Caps& c = caps_storage();
    c.all_subgroups = v;
    c.automorphisms = v;
    c.isomorphism = v;
    c.enumerate_braces = v;
}

} // namespace brachyon
