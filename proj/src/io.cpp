#include "io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace brachyon {

using json = nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        fail(errc::parse_error, std::string("bad json: ") + e.what());
    }
}

std::string finish(const json& j) { return j.dump() + "\n"; }

void expect_kind(const json& j, const std::string& kind) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(errc::parse_error, "missing \"kind\" field");
    if (j["kind"].get<std::string>() != kind)
        fail(errc::parse_error, "expected kind \"" + kind + "\", found \"" +
                                    j["kind"].get<std::string>() + "\"");
}

std::vector<std::vector<int>> read_table(const json& j, const std::string& key,
                                         size_t rows, size_t cols) {
    if (!j.contains(key) || !j[key].is_array())
        fail(errc::parse_error, "missing table \"" + key + "\"");
    std::vector<std::vector<int>> t;
    for (const auto& row : j[key]) {
        if (!row.is_array()) fail(errc::parse_error, "table \"" + key + "\" has a non-array row");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                fail(errc::parse_error, "table \"" + key + "\" has a non-integer entry");
            r.push_back(v.get<int>());
        }
        t.push_back(std::move(r));
    }
    if (t.size() != rows)
        fail(errc::parse_error, "table \"" + key + "\" has " + std::to_string(t.size()) +
                                    " rows, expected " + std::to_string(rows));
    for (const auto& r : t) {
        if (r.size() != cols)
            fail(errc::parse_error, "table \"" + key + "\" has a row of length " +
                                        std::to_string(r.size()) + ", expected " +
                                        std::to_string(cols));
        for (int v : r)
            if (v < 0 || v >= (int)cols)
                fail(errc::parse_error, "table \"" + key + "\" entry " + std::to_string(v) +
                                            " out of range");
    }
    return t;
}

size_t read_order(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0)
        fail(errc::parse_error, "missing positive \"" + key + "\"");
    long long n = j[key].get<long long>();
    if (n > 65536) fail(errc::parse_error, "\"" + key + "\" too large");
    return (size_t)n;
}

// relabel so that the two-sided identity of `probe` lands at index 0; the
// same swap is applied to every table handed in
int find_identity(const std::vector<std::vector<int>>& probe) {
    int n = (int)probe.size();
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            if (probe[e][j] != j || probe[j][e] != j) ok = false;
        if (ok) return e;
    }
    return 0; // no identity at all: leave the table alone and let make() complain
}

std::vector<std::vector<int>> relabel(const std::vector<std::vector<int>>& t, int e) {
    if (e == 0) return t;
    int n = (int)t.size();
    auto s = [&](int i) { return i == 0 ? e : (i == e ? 0 : i); };
    std::vector<std::vector<int>> out(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = s(t[s(i)][s(j)]);
    return out;
}

json group_json(const FiniteGroup& G) {
    json j;
    j["kind"] = "group";
    j["order"] = G.order();
    j["table"] = G.table_rows();
    return j;
}

json brace_json(const BracePtr& B) {
    json j;
    j["kind"] = "skew_brace";
    j["order"] = B->order();
    j["star"] = B->star_group()->table_rows();
    j["dot"] = B->dot_group()->table_rows();
    return j;
}

BracePtr brace_from_j(const json& j) {
    expect_kind(j, "skew_brace");
    size_t n = read_order(j, "order");
    auto star = read_table(j, "star", n, n);
    auto dot = read_table(j, "dot", n, n);
    int e = find_identity(star);
    return SkewBrace::make(relabel(star, e), relabel(dot, e));
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string table_lines(const std::vector<std::vector<int>>& t) {
    std::ostringstream os;
    for (const auto& row : t) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? " " : "  ") << row[i];
        os << "\n";
    }
    return os.str();
}

std::string profile_line(const std::vector<int>& ords) {
    std::map<int, int> profile;
    for (int o : ords) ++profile[o];
    std::ostringstream os;
    bool first = true;
    for (auto [ord, cnt] : profile) {
        os << (first ? "" : " ") << ord << "^" << cnt;
        first = false;
    }
    return os.str();
}

json subgroups_json(const std::vector<Subgroup>& subs) {
    json arr = json::array();
    for (const auto& K : subs) arr.push_back(K.elems);
    return arr;
}

} // namespace

std::string kind_of_text(const std::string& text) {
    json j = parse(text);
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(errc::parse_error, "missing \"kind\" field");
    return j["kind"].get<std::string>();
}

std::string group_to_json(const GroupPtr& G) { return finish(group_json(*G)); }

GroupPtr group_from_json(const std::string& text) {
    json j = parse(text);
    expect_kind(j, "group");
    size_t n = read_order(j, "order");
    auto t = read_table(j, "table", n, n);
    return FiniteGroup::make(relabel(t, find_identity(t)));
}

std::string group_to_text(const GroupPtr& G) {
    std::ostringstream os;
    os << "group of order " << G->order() << "\n" << table_lines(G->table_rows());
    return os.str();
}

std::string group_report(const GroupPtr& G) {
    std::ostringstream os;
    bool abelian = true;
    for (int a = 0; a < G->order() && abelian; ++a)
        for (int b = a + 1; b < G->order(); ++b)
            if (G->mul(a, b) != G->mul(b, a)) {
                abelian = false;
                break;
            }
    os << "kind: group\n";
    os << "order: " << G->order() << "\n";
    os << "abelian: " << yesno(abelian) << "\n";
    os << "conjugacy classes: " << conjugacy_classes(G).size() << "\n";
    os << "element orders: " << profile_line(G->order_profile()) << "\n";
    return os.str();
}

std::string brace_to_json(const BracePtr& B) { return finish(brace_json(B)); }

BracePtr brace_from_json(const std::string& text) { return brace_from_j(parse(text)); }

std::string brace_to_text(const BracePtr& B) {
    std::ostringstream os;
    os << "skew brace of order " << B->order() << "\n";
    os << "star:\n" << table_lines(B->star_group()->table_rows());
    os << "dot:\n" << table_lines(B->dot_group()->table_rows());
    return os.str();
}

std::string brace_report(const BracePtr& B) {
    std::ostringstream os;
    Subgroup soc = socle(B);
    os << "kind: skew_brace\n";
    os << "order: " << B->order() << "\n";
    os << "left brace: " << yesno(B->star_abelian()) << "\n";
    os << "two-sided: " << yesno(is_two_sided(B)) << "\n";
    os << "socle order: " << soc.order() << "\n";
    os << "square-free elements: " << square_free_elements(B).size() << " of "
       << B->order() << "\n";
    os << "additive orders: " << profile_line(B->star_group()->order_profile()) << "\n";
    os << "multiplicative orders: " << profile_line(B->dot_group()->order_profile())
       << "\n";
    return os.str();
}

std::string solution_to_json(const Solution& S) {
    json j;
    j["kind"] = "solution";
    j["size"] = S.n;
    j["f"] = S.F;
    j["g"] = S.Gt;
    return finish(j);
}

Solution solution_from_json(const std::string& text) {
    json j = parse(text);
    expect_kind(j, "solution");
    size_t n = read_order(j, "size");
    Solution S;
    S.n = (int)n;
    S.F = read_table(j, "f", n, n);
    S.Gt = read_table(j, "g", n, n);
    return S;
}

std::string solution_to_text(const Solution& S) {
    std::ostringstream os;
    os << "solution of size " << S.n << "\n";
    for (int x = 0; x < S.n; ++x)
        os << "f[" << x << "] = "
           << (is_permutation(S.F[x]) ? cycle_notation(S.F[x]) : "not a permutation")
           << "\n";
    for (int y = 0; y < S.n; ++y)
        os << "g[" << y << "] = "
           << (is_permutation(S.Gt[y]) ? cycle_notation(S.Gt[y]) : "not a permutation")
           << "\n";
    return os.str();
}

std::string solution_report(const Solution& S) {
    std::ostringstream os;
    os << "kind: solution\n";
    os << "size: " << S.n << "\n";
    bool bij = r_bijective(S);
    os << "bijective: " << yesno(bij) << "\n";
    YbeReport rep = verify_ybe(S);
    os << "ybe: " << (rep.ok ? "ok" : "fails") << "\n";
    if (!rep.ok) {
        os << "failing equation: " << rep.eq << " at (" << rep.x << "," << rep.y << ","
           << rep.z << ")\n";
        return os.str();
    }
    bool nd = is_nondegenerate(S);
    os << "nondegenerate: " << yesno(nd) << "\n";
    bool inv = is_involutive(S);
    os << "involutive: " << yesno(inv) << "\n";
    os << "square-free: " << yesno(is_square_free(S)) << "\n";
    if (nd) {
        try {
            PermutationBrace P = permutation_brace(S);
            os << "structure group order: " << P.brace->order() << "\n";
        } catch (const Error& e) {
            if (e.code != errc::order_cap_exceeded) throw;
            os << "structure group order: over cap\n";
        }
    }
    if (nd && inv) {
        bool irr = is_irretractable(S);
        os << "irretractable: " << yesno(irr) << "\n";
        if (!irr) os << "retraction size: " << retraction(S).n << "\n";
    }
    return os.str();
}

std::string rack_to_json(const std::vector<std::vector<int>>& circ) {
    json j;
    j["kind"] = "rack";
    j["size"] = circ.size();
    j["circ"] = circ;
    return finish(j);
}

std::vector<std::vector<int>> rack_from_json(const std::string& text) {
    json j = parse(text);
    expect_kind(j, "rack");
    size_t n = read_order(j, "size");
    return read_table(j, "circ", n, n);
}

std::string rack_to_text(const std::vector<std::vector<int>>& circ) {
    std::ostringstream os;
    os << "rack of size " << circ.size() << "\n";
    for (size_t u = 0; u < circ.size(); ++u)
        os << "act[" << u << "] = "
           << (is_permutation(circ[u]) ? cycle_notation(circ[u]) : "not a permutation")
           << "\n";
    return os.str();
}

std::string rack_report(const std::vector<std::vector<int>>& circ) {
    std::ostringstream os;
    os << "kind: rack\n";
    os << "size: " << circ.size() << "\n";
    bool rack = is_rack(circ);
    os << "rack: " << yesno(rack) << "\n";
    if (rack) os << "quandle: " << yesno(is_quandle(circ)) << "\n";
    return os.str();
}

std::string spec_to_json(const ConstructionSpec& spec) {
    json j;
    j["kind"] = "construction_spec";
    j["brace"] = brace_json(spec.brace);
    json orbits = json::array();
    for (const auto& fam : spec.families) {
        json o;
        o["rep"] = fam.rep;
        o["subgroups"] = subgroups_json(fam.subs);
        orbits.push_back(std::move(o));
    }
    j["orbits"] = std::move(orbits);
    return finish(j);
}

ConstructionSpec spec_from_json(const std::string& text) {
    json j = parse(text);
    expect_kind(j, "construction_spec");
    if (!j.contains("brace")) fail(errc::parse_error, "missing \"brace\"");
    ConstructionSpec spec;
    spec.brace = brace_from_j(j["brace"]);
    spec.sd = brace_semidirect(spec.brace);
    int gorder = spec.sd.group->order();
    if (!j.contains("orbits") || !j["orbits"].is_array())
        fail(errc::parse_error, "missing \"orbits\"");
    for (const auto& o : j["orbits"]) {
        OrbitFamily fam;
        if (!o.is_object() || !o.contains("rep") || !o["rep"].is_number_integer())
            fail(errc::parse_error, "orbit entry needs an integer \"rep\"");
        fam.rep = o["rep"].get<int>();
        if (!o.contains("subgroups") || !o["subgroups"].is_array())
            fail(errc::parse_error, "orbit entry needs \"subgroups\"");
        for (const auto& lst : o["subgroups"]) {
            if (!lst.is_array()) fail(errc::parse_error, "subgroup entry must be an array");
            std::vector<int> elems;
            for (const auto& v : lst) {
                if (!v.is_number_integer())
                    fail(errc::parse_error, "subgroup element must be an integer");
                int e = v.get<int>();
                if (e < 0 || e >= gorder)
                    fail(errc::parse_error, "subgroup element out of range");
                elems.push_back(e);
            }
            fam.subs.push_back(make_subgroup(spec.sd.group, elems));
        }
        spec.families.push_back(std::move(fam));
    }
    return spec;
}

std::string spec_to_text(const ConstructionSpec& spec) {
    std::ostringstream os;
    os << "construction spec over a skew brace of order " << spec.brace->order() << "\n";
    for (const auto& fam : spec.families) {
        os << "orbit of " << fam.rep << ": subgroup orders";
        for (const auto& K : fam.subs) os << " " << K.order();
        os << "\n";
    }
    return os.str();
}

std::string spec_report(const ConstructionSpec& spec) {
    std::ostringstream os;
    os << "kind: construction_spec\n";
    os << "brace order: " << spec.brace->order() << "\n";
    os << "orbit families: " << spec.families.size() << "\n";
    long long size = 0;
    for (const auto& fam : spec.families)
        for (const auto& K : fam.subs) size += spec.sd.group->order() / K.order();
    os << "solution size: " << size << "\n";
    auto v = validate_spec(spec);
    os << "valid: " << yesno(!v) << "\n";
    if (v) os << "violation: " << v->detail << "\n";
    return os.str();
}

std::string ispec_to_json(const InvolutiveSpec& spec) {
    json j;
    j["kind"] = "involutive_spec";
    j["brace"] = brace_json(spec.brace);
    json orbits = json::array();
    for (const auto& fam : spec.families) {
        json o;
        o["rep"] = fam.rep;
        o["subgroups"] = subgroups_json(fam.subs);
        orbits.push_back(std::move(o));
    }
    j["orbits"] = std::move(orbits);
    return finish(j);
}

InvolutiveSpec ispec_from_json(const std::string& text) {
    json j = parse(text);
    expect_kind(j, "involutive_spec");
    if (!j.contains("brace")) fail(errc::parse_error, "missing \"brace\"");
    InvolutiveSpec spec;
    spec.brace = brace_from_j(j["brace"]);
    int n = spec.brace->order();
    if (!j.contains("orbits") || !j["orbits"].is_array())
        fail(errc::parse_error, "missing \"orbits\"");
    for (const auto& o : j["orbits"]) {
        OrbitFamily fam;
        if (!o.is_object() || !o.contains("rep") || !o["rep"].is_number_integer())
            fail(errc::parse_error, "orbit entry needs an integer \"rep\"");
        fam.rep = o["rep"].get<int>();
        if (!o.contains("subgroups") || !o["subgroups"].is_array())
            fail(errc::parse_error, "orbit entry needs \"subgroups\"");
        for (const auto& lst : o["subgroups"]) {
            if (!lst.is_array()) fail(errc::parse_error, "subgroup entry must be an array");
            std::vector<int> elems;
            for (const auto& v : lst) {
                if (!v.is_number_integer())
                    fail(errc::parse_error, "subgroup element must be an integer");
                int e = v.get<int>();
                if (e < 0 || e >= n) fail(errc::parse_error, "subgroup element out of range");
                elems.push_back(e);
            }
            fam.subs.push_back(make_subgroup(spec.brace->dot_group(), elems));
        }
        spec.families.push_back(std::move(fam));
    }
    return spec;
}

std::string ispec_to_text(const InvolutiveSpec& spec) {
    std::ostringstream os;
    os << "involutive spec over a left brace of order " << spec.brace->order() << "\n";
    for (const auto& fam : spec.families) {
        os << "orbit of " << fam.rep << ": subgroup orders";
        for (const auto& K : fam.subs) os << " " << K.order();
        os << "\n";
    }
    return os.str();
}

std::string ispec_report(const InvolutiveSpec& spec) {
    std::ostringstream os;
    os << "kind: involutive_spec\n";
    os << "brace order: " << spec.brace->order() << "\n";
    os << "orbit families: " << spec.families.size() << "\n";
    long long size = 0;
    for (const auto& fam : spec.families)
        for (const auto& K : fam.subs) size += spec.brace->order() / K.order();
    os << "solution size: " << size << "\n";
    auto v = validate_involutive_spec(spec);
    os << "valid: " << yesno(!v) << "\n";
    if (v) os << "violation: " << v->detail << "\n";
    return os.str();
}

} // namespace brachyon
