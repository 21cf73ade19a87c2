#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brachyon.h"

namespace {

struct str_holder {
    char* p = nullptr;
    ~str_holder() { byx_string_free(p); }
};

int lib_fail() {
    std::cerr << "error: " << byx_last_error() << "\n";
    return 1;
}

int io_fail(const std::string& what, const std::string& path) {
    std::cerr << "error: cannot " << what << " " << path << "\n";
    return 1;
}

bool slurp(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return out.good();
}

std::string numbered(const std::string& prefix, int i, const std::string& ext) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "-%03d.", i);
    return prefix + buf + ext;
}

struct CommonOpts {
    std::string input;
    std::string output;
    std::string format = "json";
    int max_order = 0;

    std::string ext() const { return format == "json" ? "json" : "txt"; }
    int apply_cap() const {
        if (max_order > 0 && byx_set_cap_order(max_order) != BYX_OK) return lib_fail();
        return 0;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_output = true) {
    cmd->add_option("--input,-i", o.input, "input file")->required();
    if (with_output) {
        cmd->add_option("--output,-o", o.output, "output file (or prefix)");
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
    }
    cmd->add_option("--max-order", o.max_order, "override the global search caps")
        ->check(CLI::PositiveNumber);
}

// report to stdout, optional file via --output
int deliver_solution(byx_solution* sol, const CommonOpts& o) {
    str_holder rep;
    if (byx_solution_report(sol, &rep.p) != BYX_OK) return lib_fail();
    std::cout << rep.p;
    if (!o.output.empty()) {
        str_holder body;
        int rc = o.format == "json" ? byx_solution_json(sol, &body.p)
                                    : byx_solution_text(sol, &body.p);
        if (rc != BYX_OK) return lib_fail();
        if (!spill(o.output, body.p)) return io_fail("write", o.output);
    }
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    std::string text;
    if (!slurp(o.input, text)) return io_fail("read", o.input);
    str_holder kind;
    if (byx_kind_of(text.c_str(), &kind.p) != BYX_OK) return lib_fail();
    std::string k = kind.p;
    str_holder rep;
    int rc = BYX_EINVAL;
    if (k == "group") {
        byx_group* g = nullptr;
        if ((rc = byx_group_parse(text.c_str(), &g)) == BYX_OK)
            rc = byx_group_report(g, &rep.p);
        byx_group_free(g);
    } else if (k == "skew_brace") {
        byx_brace* b = nullptr;
        if ((rc = byx_brace_parse(text.c_str(), &b)) == BYX_OK)
            rc = byx_brace_report(b, &rep.p);
        byx_brace_free(b);
    } else if (k == "solution") {
        byx_solution* s = nullptr;
        if ((rc = byx_solution_parse(text.c_str(), &s)) == BYX_OK)
            rc = byx_solution_report(s, &rep.p);
        byx_solution_free(s);
    } else if (k == "rack") {
        byx_rack* r = nullptr;
        if ((rc = byx_rack_parse(text.c_str(), &r)) == BYX_OK)
            rc = byx_rack_report(r, &rep.p);
        byx_rack_free(r);
    } else if (k == "construction_spec") {
        byx_spec* sp = nullptr;
        if ((rc = byx_spec_parse(text.c_str(), &sp)) == BYX_OK)
            rc = byx_spec_report(sp, &rep.p);
        byx_spec_free(sp);
    } else if (k == "involutive_spec") {
        byx_ispec* sp = nullptr;
        if ((rc = byx_ispec_parse(text.c_str(), &sp)) == BYX_OK)
            rc = byx_ispec_report(sp, &rep.p);
        byx_ispec_free(sp);
    } else {
        std::cerr << "error: unsupported kind \"" << k << "\"\n";
        return 1;
    }
    if (rc != BYX_OK) return lib_fail();
    std::cout << rep.p;
    return 0;
}

int cmd_construct(const CommonOpts& o, bool involutive) {
    std::string text;
    if (!slurp(o.input, text)) return io_fail("read", o.input);
    byx_solution* sol = nullptr;
    int rc;
    if (involutive) {
        byx_ispec* sp = nullptr;
        if ((rc = byx_ispec_parse(text.c_str(), &sp)) == BYX_OK)
            rc = byx_ispec_build(sp, &sol);
        byx_ispec_free(sp);
    } else {
        byx_spec* sp = nullptr;
        if ((rc = byx_spec_parse(text.c_str(), &sp)) == BYX_OK)
            rc = byx_spec_build(sp, &sol);
        byx_spec_free(sp);
    }
    if (rc != BYX_OK) return lib_fail();
    int ret = deliver_solution(sol, o);
    byx_solution_free(sol);
    return ret;
}

int cmd_irretractable(const CommonOpts& o) {
    std::string text;
    if (!slurp(o.input, text)) return io_fail("read", o.input);
    byx_brace* b = nullptr;
    byx_solution* sol = nullptr;
    int rc = byx_brace_parse(text.c_str(), &b);
    if (rc == BYX_OK) rc = byx_brace_irretractable(b, nullptr, 0, &sol);
    byx_brace_free(b);
    if (rc != BYX_OK) return lib_fail();
    int ret = deliver_solution(sol, o);
    byx_solution_free(sol);
    return ret;
}

int cmd_classify(const CommonOpts& o, int max_size, int cap_families) {
    std::string text;
    if (!slurp(o.input, text)) return io_fail("read", o.input);
    byx_brace* b = nullptr;
    byx_solution_list* list = nullptr;
    int rc = byx_brace_parse(text.c_str(), &b);
    if (rc == BYX_OK) rc = byx_classify(b, max_size, cap_families, &list);
    byx_brace_free(b);
    if (rc != BYX_OK) return lib_fail();
    int count = byx_solution_list_count(list);
    std::cout << "count: " << count << "\n";
    for (int i = 0; i < count; ++i) {
        byx_solution* sol = nullptr;
        if (byx_solution_list_get(list, i, &sol) != BYX_OK) {
            byx_solution_list_free(list);
            return lib_fail();
        }
        std::cout << "solution " << i << ": size " << byx_solution_size(sol) << "\n";
        if (!o.output.empty()) {
            str_holder body;
            int wrc = o.format == "json" ? byx_solution_json(sol, &body.p)
                                         : byx_solution_text(sol, &body.p);
            std::string path = numbered(o.output, i, o.ext());
            if (wrc != BYX_OK || !spill(path, body.p)) {
                byx_solution_free(sol);
                byx_solution_list_free(list);
                return wrc != BYX_OK ? lib_fail() : io_fail("write", path);
            }
        }
        byx_solution_free(sol);
    }
    byx_solution_list_free(list);
    return 0;
}

int cmd_racks(const CommonOpts& o) {
    std::string text;
    if (!slurp(o.input, text)) return io_fail("read", o.input);
    byx_group* g = nullptr;
    byx_rack* r = nullptr;
    int rc = byx_group_parse(text.c_str(), &g);
    if (rc == BYX_OK) rc = byx_group_rack_all_classes(g, &r);
    byx_group_free(g);
    if (rc != BYX_OK) return lib_fail();
    str_holder rep;
    if (byx_rack_report(r, &rep.p) != BYX_OK) {
        byx_rack_free(r);
        return lib_fail();
    }
    std::cout << rep.p;
    int ret = 0;
    if (!o.output.empty()) {
        str_holder body;
        int wrc = o.format == "json" ? byx_rack_json(r, &body.p)
                                     : byx_rack_text(r, &body.p);
        if (wrc != BYX_OK)
            ret = lib_fail();
        else if (!spill(o.output, body.p))
            ret = io_fail("write", o.output);
    }
    byx_rack_free(r);
    return ret;
}

int cmd_enumerate(const CommonOpts& o) {
    std::string text;
    if (!slurp(o.input, text)) return io_fail("read", o.input);
    byx_group* g = nullptr;
    byx_brace_list* list = nullptr;
    int rc = byx_group_parse(text.c_str(), &g);
    if (rc == BYX_OK) rc = byx_enumerate_braces(g, &list);
    byx_group_free(g);
    if (rc != BYX_OK) return lib_fail();
    int count = byx_brace_list_count(list);
    std::cout << "count: " << count << "\n";
    for (int i = 0; i < count; ++i) {
        byx_brace* b = nullptr;
        if (byx_brace_list_get(list, i, &b) != BYX_OK) {
            byx_brace_list_free(list);
            return lib_fail();
        }
        std::cout << "brace " << i << ": order " << byx_brace_order(b)
                  << " left-brace " << (byx_brace_is_left(b) ? "yes" : "no") << "\n";
        if (!o.output.empty()) {
            str_holder body;
            int wrc = o.format == "json" ? byx_brace_json(b, &body.p)
                                         : byx_brace_text(b, &body.p);
            std::string path = numbered(o.output, i, o.ext());
            if (wrc != BYX_OK || !spill(path, body.p)) {
                byx_brace_free(b);
                byx_brace_list_free(list);
                return wrc != BYX_OK ? lib_fail() : io_fail("write", path);
            }
        }
        byx_brace_free(b);
    }
    byx_brace_list_free(list);
    return 0;
}

int cmd_permutation_brace(const CommonOpts& o) {
    std::string text;
    if (!slurp(o.input, text)) return io_fail("read", o.input);
    byx_solution* s = nullptr;
    byx_brace* b = nullptr;
    int rc = byx_solution_parse(text.c_str(), &s);
    if (rc == BYX_OK) rc = byx_solution_permutation_brace(s, &b);
    byx_solution_free(s);
    if (rc != BYX_OK) return lib_fail();
    str_holder rep;
    if (byx_brace_report(b, &rep.p) != BYX_OK) {
        byx_brace_free(b);
        return lib_fail();
    }
    std::cout << rep.p;
    int ret = 0;
    if (!o.output.empty()) {
        str_holder body;
        int wrc = o.format == "json" ? byx_brace_json(b, &body.p)
                                     : byx_brace_text(b, &body.p);
        if (wrc != BYX_OK)
            ret = lib_fail();
        else if (!spill(o.output, body.p))
            ret = io_fail("write", o.output);
    }
    byx_brace_free(b);
    return ret;
}

int cmd_examples(const CommonOpts& o, const std::string& name,
                 const std::string& emit) {
    std::vector<std::string> kinds;
    std::stringstream ss(emit);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item != "brace" && item != "solution" && item != "group") {
            std::cerr << "error: unknown emit kind \"" << item << "\"\n";
            return 2;
        }
        kinds.push_back(item);
    }
    if (kinds.empty()) {
        std::cerr << "error: nothing to emit\n";
        return 2;
    }
    for (const std::string& k : kinds) {
        str_holder rep, body;
        int rc;
        if (k == "brace") {
            byx_brace* b = nullptr;
            if ((rc = byx_example_brace(name.c_str(), &b)) == BYX_OK) {
                rc = byx_brace_report(b, &rep.p);
                if (rc == BYX_OK)
                    rc = o.format == "json" ? byx_brace_json(b, &body.p)
                                            : byx_brace_text(b, &body.p);
            }
            byx_brace_free(b);
        } else if (k == "solution") {
            byx_solution* s = nullptr;
            if ((rc = byx_example_solution(name.c_str(), &s)) == BYX_OK) {
                rc = byx_solution_report(s, &rep.p);
                if (rc == BYX_OK)
                    rc = o.format == "json" ? byx_solution_json(s, &body.p)
                                            : byx_solution_text(s, &body.p);
            }
            byx_solution_free(s);
        } else {
            byx_group* g = nullptr;
            if ((rc = byx_example_group(name.c_str(), &g)) == BYX_OK) {
                rc = byx_group_report(g, &rep.p);
                if (rc == BYX_OK)
                    rc = o.format == "json" ? byx_group_json(g, &body.p)
                                            : byx_group_text(g, &body.p);
            }
            byx_group_free(g);
        }
        if (rc != BYX_OK) return lib_fail();
        std::cout << rep.p;
        if (!o.output.empty()) {
            std::string path = o.output + "-" + k + "." + o.ext();
            if (!spill(path, body.p)) return io_fail("write", path);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("BRACHYON_CAP_ORDER")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v <= 0) {
            std::cerr << "error: BRACHYON_CAP_ORDER must be a positive integer\n";
            return 2;
        }
        byx_set_cap_order((int)v);
    }

    CLI::App app{"finite skew braces, Yang-Baxter solutions, and the coset construction"};
    app.require_subcommand(1);
    app.set_version_flag("--version", byx_version());

    CommonOpts verify_o;
    CLI::App* verify = app.add_subcommand("verify", "validate a file and report its properties");
    add_common(verify, verify_o, false);

    CommonOpts construct_o;
    CLI::App* construct = app.add_subcommand("construct", "build the solution of a construction spec");
    add_common(construct, construct_o);

    CommonOpts coninv_o;
    CLI::App* coninv = app.add_subcommand("construct-involutive", "build the involutive solution of a left-brace spec");
    add_common(coninv, coninv_o);

    CommonOpts irret_o;
    CLI::App* irret = app.add_subcommand("construct-irretractable", "irretractable solution of a trivial-socle left brace");
    add_common(irret, irret_o);

    CommonOpts classify_o;
    int max_size = 0, cap_families = 0;
    CLI::App* classify = app.add_subcommand("classify", "all solutions over a brace up to isomorphism");
    classify->add_option("--input,-i,--brace", classify_o.input, "brace file")->required();
    classify->add_option("--output,-o", classify_o.output, "output file prefix");
    classify->add_option("--format", classify_o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    classify->add_option("--max-size", max_size, "largest solution size to keep");
    classify->add_option("--cap-families", cap_families, "subgroup multiplicity per orbit")
        ->check(CLI::PositiveNumber);
    classify->add_option("--max-order", classify_o.max_order, "override the global search caps")
        ->check(CLI::PositiveNumber);

    CommonOpts racks_o;
    CLI::App* racks = app.add_subcommand("racks", "conjugation rack of a group on all classes");
    add_common(racks, racks_o);

    CommonOpts enum_o;
    CLI::App* enumb = app.add_subcommand("enumerate-braces", "all skew braces on an additive group");
    add_common(enumb, enum_o);

    CommonOpts permb_o;
    CLI::App* permb = app.add_subcommand("permutation-brace", "structure brace of a solution");
    add_common(permb, permb_o);

    CommonOpts ex_o;
    std::string ex_name, ex_emit = "brace,solution";
    CLI::App* examples = app.add_subcommand("examples", "built-in braces and their solutions");
    examples->add_option("--name", ex_name, "example name")->required();
    examples->add_option("--emit", ex_emit, "comma list of brace,solution,group");
    examples->add_option("--output,-o", ex_o.output, "output file prefix");
    examples->add_option("--format", ex_o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    examples->add_option("--max-order", ex_o.max_order, "override the global search caps")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (verify->parsed()) {
        if (int rc = verify_o.apply_cap()) return rc;
        return cmd_verify(verify_o);
    }
    if (construct->parsed()) {
        if (int rc = construct_o.apply_cap()) return rc;
        return cmd_construct(construct_o, false);
    }
    if (coninv->parsed()) {
        if (int rc = coninv_o.apply_cap()) return rc;
        return cmd_construct(coninv_o, true);
    }
    if (irret->parsed()) {
        if (int rc = irret_o.apply_cap()) return rc;
        return cmd_irretractable(irret_o);
    }
    if (classify->parsed()) {
        if (int rc = classify_o.apply_cap()) return rc;
        return cmd_classify(classify_o, max_size, cap_families);
    }
    if (racks->parsed()) {
        if (int rc = racks_o.apply_cap()) return rc;
        return cmd_racks(racks_o);
    }
    if (enumb->parsed()) {
        if (int rc = enum_o.apply_cap()) return rc;
        return cmd_enumerate(enum_o);
    }
    if (permb->parsed()) {
        if (int rc = permb_o.apply_cap()) return rc;
        return cmd_permutation_brace(permb_o);
    }
    if (examples->parsed()) {
        if (int rc = ex_o.apply_cap()) return rc;
        return cmd_examples(ex_o, ex_name, ex_emit);
    }
    return 2;
}
