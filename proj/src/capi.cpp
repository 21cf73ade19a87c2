#include "brachyon.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include "construct.hpp"
#include "io.hpp"

using namespace brachyon;

struct byx_group {
    GroupPtr g;
};
struct byx_brace {
    BracePtr b;
};
struct byx_solution {
    Solution s;
};
struct byx_rack {
    std::vector<std::vector<int>> circ;
};
struct byx_spec {
    ConstructionSpec spec;
};
struct byx_ispec {
    InvolutiveSpec spec;
};
struct byx_solution_list {
    std::vector<Solution> items;
};
struct byx_brace_list {
    std::vector<BracePtr> items;
};

namespace {

thread_local std::string tl_error;

int map_code(errc c) {
    switch (c) {
        case errc::parse_error: return BYX_EPARSE;
        case errc::order_cap_exceeded: return BYX_ECAP;
        case errc::internal: return BYX_EINTERNAL;
        case errc::bad_input: return BYX_EINVAL;
        default: return BYX_EVALIDATION;
    }
}

template <class F>
int guard(F&& fn) {
    try {
        fn();
        return BYX_OK;
    } catch (const Error& e) {
        tl_error = e.what();
        return map_code(e.code);
    } catch (const std::exception& e) {
        tl_error = e.what();
        return BYX_EINTERNAL;
    }
}

int invalid(const char* msg) {
    tl_error = msg;
    return BYX_EINVAL;
}

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int hand_out(const std::string& s, char** out) {
    *out = dup_string(s);
    if (!*out) {
        tl_error = "out of memory";
        return BYX_EINTERNAL;
    }
    return BYX_OK;
}

GroupPtr cyclic_group(int n) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
    return FiniteGroup::make(rows);
}

GroupPtr symmetric3() {
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

// "trivial", "trivial:z6", "opposite:s3", "cyclic-flip:3", ...
BracePtr brace_by_name(const std::string& name) {
    std::string head = name, arg;
    if (auto pos = name.find(':'); pos != std::string::npos) {
        head = name.substr(0, pos);
        arg = name.substr(pos + 1);
    }
    auto base_group = [&]() -> GroupPtr {
        if (arg.empty() || arg == "s3") return symmetric3();
        if (arg.size() > 1 && arg[0] == 'z') {
            int n = std::atoi(arg.c_str() + 1);
            require(n >= 1 && n <= 4096, errc::bad_input,
                    "cyclic group size out of range in \"" + arg + "\"");
            return cyclic_group(n);
        }
        fail(errc::bad_input, "unknown group suffix \"" + arg + "\"");
    };
    if (head == "trivial") return trivial_brace(base_group());
    if (head == "opposite") return opposite_brace(base_group());
    if (head == "cyclic-flip") {
        int n = arg.empty() ? 2 : std::atoi(arg.c_str());
        require(n >= 1 && n <= 2048, errc::bad_input,
                "cyclic-flip size out of range in \"" + name + "\"");
        return cyclic_flip_brace(n);
    }
    if (!arg.empty()) fail(errc::bad_input, "example \"" + head + "\" takes no suffix");
    if (head == "order21") return order21_brace();
    if (head == "vendramin") return vendramin_brace();
    fail(errc::bad_input, "unknown example name \"" + name + "\"");
}

} // namespace

extern "C" {

const char* byx_version(void) { return "1.0.0"; }

const char* byx_last_error(void) { return tl_error.c_str(); }

void byx_string_free(char* s) { std::free(s); }

int byx_set_cap_order(int n) {
    if (n <= 0) return invalid("cap must be positive");
    set_cap_override(n);
    return BYX_OK;
}

int byx_kind_of(const char* text, char** kind_out) {
    if (!text || !kind_out) return invalid("null argument");
    return guard([&] {
        std::string k = kind_of_text(text);
        int rc = hand_out(k, kind_out);
        if (rc != BYX_OK) throw Error(errc::internal, tl_error);
    });
}

/* groups */

int byx_group_parse(const char* text, byx_group** out) {
    if (!text || !out) return invalid("null argument");
    return guard([&] { *out = new byx_group{group_from_json(text)}; });
}

int byx_group_json(const byx_group* g, char** out) {
    if (!g || !out) return invalid("null argument");
    return hand_out(group_to_json(g->g), out);
}

int byx_group_text(const byx_group* g, char** out) {
    if (!g || !out) return invalid("null argument");
    return hand_out(group_to_text(g->g), out);
}

int byx_group_report(const byx_group* g, char** out) {
    if (!g || !out) return invalid("null argument");
    return guard([&] {
        std::string rep = group_report(g->g);
        if (hand_out(rep, out) != BYX_OK) throw Error(errc::internal, tl_error);
    });
}

int byx_group_order(const byx_group* g) { return g ? g->g->order() : 0; }

void byx_group_free(byx_group* g) { delete g; }

/* braces */

int byx_brace_parse(const char* text, byx_brace** out) {
    if (!text || !out) return invalid("null argument");
    return guard([&] { *out = new byx_brace{brace_from_json(text)}; });
}

int byx_brace_json(const byx_brace* b, char** out) {
    if (!b || !out) return invalid("null argument");
    return hand_out(brace_to_json(b->b), out);
}

int byx_brace_text(const byx_brace* b, char** out) {
    if (!b || !out) return invalid("null argument");
    return hand_out(brace_to_text(b->b), out);
}

int byx_brace_report(const byx_brace* b, char** out) {
    if (!b || !out) return invalid("null argument");
    return guard([&] {
        std::string rep = brace_report(b->b);
        if (hand_out(rep, out) != BYX_OK) throw Error(errc::internal, tl_error);
    });
}

int byx_brace_order(const byx_brace* b) { return b ? b->b->order() : 0; }

int byx_brace_is_left(const byx_brace* b) {
    return b && b->b->star_abelian() ? 1 : 0;
}

void byx_brace_free(byx_brace* b) { delete b; }

/* solutions */

int byx_solution_parse(const char* text, byx_solution** out) {
    if (!text || !out) return invalid("null argument");
    return guard([&] { *out = new byx_solution{solution_from_json(text)}; });
}

int byx_solution_json(const byx_solution* s, char** out) {
    if (!s || !out) return invalid("null argument");
    return hand_out(solution_to_json(s->s), out);
}

int byx_solution_text(const byx_solution* s, char** out) {
    if (!s || !out) return invalid("null argument");
    return hand_out(solution_to_text(s->s), out);
}

int byx_solution_report(const byx_solution* s, char** out) {
    if (!s || !out) return invalid("null argument");
    return guard([&] {
        std::string rep = solution_report(s->s);
        if (hand_out(rep, out) != BYX_OK) throw Error(errc::internal, tl_error);
    });
}

int byx_solution_size(const byx_solution* s) { return s ? s->s.n : 0; }

void byx_solution_free(byx_solution* s) { delete s; }

/* racks */

int byx_rack_parse(const char* text, byx_rack** out) {
    if (!text || !out) return invalid("null argument");
    return guard([&] { *out = new byx_rack{rack_from_json(text)}; });
}

int byx_rack_json(const byx_rack* r, char** out) {
    if (!r || !out) return invalid("null argument");
    return hand_out(rack_to_json(r->circ), out);
}

int byx_rack_text(const byx_rack* r, char** out) {
    if (!r || !out) return invalid("null argument");
    return hand_out(rack_to_text(r->circ), out);
}

int byx_rack_report(const byx_rack* r, char** out) {
    if (!r || !out) return invalid("null argument");
    return hand_out(rack_report(r->circ), out);
}

int byx_rack_size(const byx_rack* r) { return r ? (int)r->circ.size() : 0; }

void byx_rack_free(byx_rack* r) { delete r; }

/* specs */

int byx_spec_parse(const char* text, byx_spec** out) {
    if (!text || !out) return invalid("null argument");
    return guard([&] { *out = new byx_spec{spec_from_json(text)}; });
}

int byx_spec_json(const byx_spec* sp, char** out) {
    if (!sp || !out) return invalid("null argument");
    return hand_out(spec_to_json(sp->spec), out);
}

int byx_spec_text(const byx_spec* sp, char** out) {
    if (!sp || !out) return invalid("null argument");
    return hand_out(spec_to_text(sp->spec), out);
}

int byx_spec_report(const byx_spec* sp, char** out) {
    if (!sp || !out) return invalid("null argument");
    return guard([&] {
        std::string rep = spec_report(sp->spec);
        if (hand_out(rep, out) != BYX_OK) throw Error(errc::internal, tl_error);
    });
}

void byx_spec_free(byx_spec* sp) { delete sp; }

int byx_ispec_parse(const char* text, byx_ispec** out) {
    if (!text || !out) return invalid("null argument");
    return guard([&] { *out = new byx_ispec{ispec_from_json(text)}; });
}

int byx_ispec_json(const byx_ispec* sp, char** out) {
    if (!sp || !out) return invalid("null argument");
    return hand_out(ispec_to_json(sp->spec), out);
}

int byx_ispec_text(const byx_ispec* sp, char** out) {
    if (!sp || !out) return invalid("null argument");
    return hand_out(ispec_to_text(sp->spec), out);
}

int byx_ispec_report(const byx_ispec* sp, char** out) {
    if (!sp || !out) return invalid("null argument");
    return guard([&] {
        std::string rep = ispec_report(sp->spec);
        if (hand_out(rep, out) != BYX_OK) throw Error(errc::internal, tl_error);
    });
}

void byx_ispec_free(byx_ispec* sp) { delete sp; }

/* constructions */

int byx_spec_build(const byx_spec* sp, byx_solution** out) {
    if (!sp || !out) return invalid("null argument");
    return guard([&] { *out = new byx_solution{build_solution(sp->spec).sol}; });
}

int byx_ispec_build(const byx_ispec* sp, byx_solution** out) {
    if (!sp || !out) return invalid("null argument");
    return guard([&] { *out = new byx_solution{build_involutive(sp->spec).sol}; });
}

int byx_brace_canonical_spec(const byx_brace* b, byx_spec** out) {
    if (!b || !out) return invalid("null argument");
    return guard([&] { *out = new byx_spec{canonical_spec(b->b)}; });
}

int byx_brace_canonical_ispec(const byx_brace* b, byx_ispec** out) {
    if (!b || !out) return invalid("null argument");
    return guard([&] { *out = new byx_ispec{canonical_involutive_spec(b->b)}; });
}

int byx_brace_irretractable(const byx_brace* b, const int* reps, int n_reps,
                            byx_solution** out) {
    if (!b || !out) return invalid("null argument");
    if (n_reps < 0 || (n_reps > 0 && !reps)) return invalid("bad reps array");
    return guard([&] {
        std::vector<int> rv(reps, reps + n_reps);
        *out = new byx_solution{build_irretractable(b->b, rv).sol};
    });
}

int byx_classify(const byx_brace* b, int max_size, int cap_families,
                 byx_solution_list** out) {
    if (!b || !out) return invalid("null argument");
    return guard([&] {
        int fam = cap_families > 0 ? cap_families : caps().max_families_per_orbit;
        *out = new byx_solution_list{classify_solutions(b->b, max_size, fam)};
    });
}

int byx_solution_list_count(const byx_solution_list* l) {
    return l ? (int)l->items.size() : 0;
}

int byx_solution_list_get(const byx_solution_list* l, int i, byx_solution** out) {
    if (!l || !out) return invalid("null argument");
    if (i < 0 || i >= (int)l->items.size()) return invalid("index out of range");
    *out = new byx_solution{l->items[i]};
    return BYX_OK;
}

void byx_solution_list_free(byx_solution_list* l) { delete l; }

int byx_enumerate_braces(const byx_group* g, byx_brace_list** out) {
    if (!g || !out) return invalid("null argument");
    return guard([&] { *out = new byx_brace_list{enumerate_braces_on(g->g)}; });
}

int byx_brace_list_count(const byx_brace_list* l) {
    return l ? (int)l->items.size() : 0;
}

int byx_brace_list_get(const byx_brace_list* l, int i, byx_brace** out) {
    if (!l || !out) return invalid("null argument");
    if (i < 0 || i >= (int)l->items.size()) return invalid("index out of range");
    *out = new byx_brace{l->items[i]};
    return BYX_OK;
}

void byx_brace_list_free(byx_brace_list* l) { delete l; }

int byx_solution_permutation_brace(const byx_solution* s, byx_brace** out) {
    if (!s || !out) return invalid("null argument");
    return guard([&] { *out = new byx_brace{permutation_brace(s->s).brace}; });
}

int byx_group_rack_all_classes(const byx_group* g, byx_rack** out) {
    if (!g || !out) return invalid("null argument");
    return guard([&] {
        std::vector<OrbitFamily> families;
        for (const auto& cls : conjugacy_classes(g->g)) {
            if (cls.size() == 1 && cls[0] == 0) continue;
            families.push_back({cls[0], {centralizer(g->g, cls[0])}});
        }
        *out = new byx_rack{rack_from_group(g->g, families).circ};
    });
}

/* examples */

int byx_example_brace(const char* name, byx_brace** out) {
    if (!name || !out) return invalid("null argument");
    return guard([&] { *out = new byx_brace{brace_by_name(name)}; });
}

int byx_example_solution(const char* name, byx_solution** out) {
    if (!name || !out) return invalid("null argument");
    return guard([&] {
        if (std::string(name) == "vendramin") {
            *out = new byx_solution{vendramin_solution().sol};
            return;
        }
        *out = new byx_solution{skew_associated_solution(brace_by_name(name))};
    });
}

int byx_example_group(const char* name, byx_group** out) {
    if (!name || !out) return invalid("null argument");
    return guard([&] { *out = new byx_group{brace_by_name(name)->dot_group()}; });
}

} // extern "C"
