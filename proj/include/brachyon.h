#ifndef BRACHYON_H
#define BRACHYON_H

/* C interface to the brachyon core: finite groups, skew braces, set-theoretic
 * Yang-Baxter solutions, racks, and the coset construction connecting them.
 * All objects live behind opaque handles; every function returns a status
 * code, with the failure message kept per thread in byx_last_error().
 * Strings handed out by the library are heap copies; release them with
 * byx_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

#define BYX_OK 0          /* success */
#define BYX_EINVAL 1      /* null handle, bad argument, malformed request */
#define BYX_EPARSE 2      /* input text is not a valid object */
#define BYX_EVALIDATION 3 /* object or spec fails a mathematical requirement */
#define BYX_ECAP 4        /* search exceeded a configured cap */
#define BYX_EINTERNAL 5   /* postcondition violated inside the library */

typedef struct byx_group byx_group;
typedef struct byx_brace byx_brace;
typedef struct byx_solution byx_solution;
typedef struct byx_rack byx_rack;
typedef struct byx_spec byx_spec;   /* general coset construction input */
typedef struct byx_ispec byx_ispec; /* involutive (left brace) variant */
typedef struct byx_solution_list byx_solution_list;
typedef struct byx_brace_list byx_brace_list;

const char* byx_version(void);

/* message for the most recent failure on this thread; never NULL */
const char* byx_last_error(void);

void byx_string_free(char* s);

/* override the global search caps (subgroup, automorphism, isomorphism and
 * brace enumeration limits); same effect as BRACHYON_CAP_ORDER */
int byx_set_cap_order(int n);

/* "group", "skew_brace", "solution", "rack", "construction_spec",
 * "involutive_spec" */
int byx_kind_of(const char* text, char** kind_out);

/* groups */
int byx_group_parse(const char* text, byx_group** out);
int byx_group_json(const byx_group* g, char** out);
int byx_group_text(const byx_group* g, char** out);
int byx_group_report(const byx_group* g, char** out);
int byx_group_order(const byx_group* g);
void byx_group_free(byx_group* g);

/* skew braces */
int byx_brace_parse(const char* text, byx_brace** out);
int byx_brace_json(const byx_brace* b, char** out);
int byx_brace_text(const byx_brace* b, char** out);
int byx_brace_report(const byx_brace* b, char** out);
int byx_brace_order(const byx_brace* b);
int byx_brace_is_left(const byx_brace* b); /* 1 if the star group is abelian */
void byx_brace_free(byx_brace* b);

/* solutions r(x,y) = (f_x(y), g_y(x)) */
int byx_solution_parse(const char* text, byx_solution** out);
int byx_solution_json(const byx_solution* s, char** out);
int byx_solution_text(const byx_solution* s, char** out);
int byx_solution_report(const byx_solution* s, char** out);
int byx_solution_size(const byx_solution* s);
void byx_solution_free(byx_solution* s);

/* racks */
int byx_rack_parse(const char* text, byx_rack** out);
int byx_rack_json(const byx_rack* r, char** out);
int byx_rack_text(const byx_rack* r, char** out);
int byx_rack_report(const byx_rack* r, char** out);
int byx_rack_size(const byx_rack* r);
void byx_rack_free(byx_rack* r);

/* construction specs: a brace plus orbit families of subgroups */
int byx_spec_parse(const char* text, byx_spec** out);
int byx_spec_json(const byx_spec* sp, char** out);
int byx_spec_text(const byx_spec* sp, char** out);
int byx_spec_report(const byx_spec* sp, char** out);
void byx_spec_free(byx_spec* sp);

int byx_ispec_parse(const char* text, byx_ispec** out);
int byx_ispec_json(const byx_ispec* sp, char** out);
int byx_ispec_text(const byx_ispec* sp, char** out);
int byx_ispec_report(const byx_ispec* sp, char** out);
void byx_ispec_free(byx_ispec* sp);

/* constructions */
int byx_spec_build(const byx_spec* sp, byx_solution** out);
int byx_ispec_build(const byx_ispec* sp, byx_solution** out);
int byx_brace_canonical_spec(const byx_brace* b, byx_spec** out);
int byx_brace_canonical_ispec(const byx_brace* b, byx_ispec** out);

/* irretractable solution from a left brace with trivial socle; reps picks
 * orbit representatives, NULL/0 means every orbit */
int byx_brace_irretractable(const byx_brace* b, const int* reps, int n_reps,
                            byx_solution** out);

/* all solutions over b up to isomorphism, within the size/multiplicity caps
 * (max_size <= 0 means unbounded, cap_families <= 0 uses the default) */
int byx_classify(const byx_brace* b, int max_size, int cap_families,
                 byx_solution_list** out);
int byx_solution_list_count(const byx_solution_list* l);
int byx_solution_list_get(const byx_solution_list* l, int i, byx_solution** out);
void byx_solution_list_free(byx_solution_list* l);

/* every skew brace structure on the given additive group, up to isomorphism */
int byx_enumerate_braces(const byx_group* g, byx_brace_list** out);
int byx_brace_list_count(const byx_brace_list* l);
int byx_brace_list_get(const byx_brace_list* l, int i, byx_brace** out);
void byx_brace_list_free(byx_brace_list* l);

/* the permutation brace generated by the rows of a non-degenerate solution */
int byx_solution_permutation_brace(const byx_solution* s, byx_brace** out);

/* conjugation rack on all non-identity classes with full centralizers */
int byx_group_rack_all_classes(const byx_group* g, byx_rack** out);

/* built-in examples; names: "trivial[:z<N>|:s3]", "opposite[:z<N>|:s3]",
 * "cyclic-flip[:<N>]", "order21", "vendramin" */
int byx_example_brace(const char* name, byx_brace** out);
int byx_example_solution(const char* name, byx_solution** out);
int byx_example_group(const char* name, byx_group** out);

#ifdef __cplusplus
}
#endif

#endif
