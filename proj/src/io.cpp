#include "symmix/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace symmix {

const char* kToolVersion = "0.1.0";

namespace {

uint64_t mask_field(const json& j, const char* key) {
    return mask_from_hex(j.at(key).get<std::string>());
}

void require_n(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("qubit count out of range");
}

} // namespace

json term_to_json(const Term& t) {
    return json{{"n", t.n},
                {"x", mask_to_hex(t.x)},
                {"y", mask_to_hex(t.y)},
                {"v", mask_to_hex(t.v)},
                {"w", mask_to_hex(t.w)}};
}

Term term_from_json(const json& j) {
    Term t;
    t.n = j.at("n").get<int>();
    require_n(t.n);
    t.x = mask_field(j, "x");
    t.y = mask_field(j, "y");
    t.v = mask_field(j, "v");
    t.w = mask_field(j, "w");
    if (!t.masks_disjoint()) throw std::invalid_argument("term masks overlap");
    uint64_t reg = (t.n == 64) ? ~0ull : ((1ull << t.n) - 1);
    if (t.support() & ~reg) throw std::invalid_argument("term exceeds register");
    return t;
}

json pair_to_json(const HermitianPair& h) {
    json j = term_to_json(h.term);
    j["re"] = rational_str(h.alpha.re);
    j["im"] = rational_str(h.alpha.im);
    return j;
}

HermitianPair pair_from_json(const json& j) {
    HermitianPair h;
    h.term = term_from_json(j);
    h.alpha.re = parse_rational(j.at("re").get<std::string>());
    h.alpha.im = parse_rational(j.at("im").get<std::string>());
    return h;
}

json pairs_to_json(const std::vector<HermitianPair>& hs) {
    json arr = json::array();
    for (const auto& h : hs) arr.push_back(pair_to_json(h));
    return arr;
}

std::vector<HermitianPair> pairs_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of pairs");
    std::vector<HermitianPair> out;
    for (const auto& e : j) out.push_back(pair_from_json(e));
    return out;
}

json groups_to_json(const GeneratorCollection& c) {
    json arr = json::array();
    for (const auto& g : c.groups) arr.push_back(pairs_to_json(g.members));
    return arr;
}

GeneratorCollection groups_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of groups");
    GeneratorCollection c;
    for (const auto& e : j) c.groups.push_back({pairs_from_json(e)});
    return c;
}

json poly_to_json(const PolyConstraint& c) {
    json ms = json::array();
    for (const auto& m : c.monomials)
        ms.push_back(json{{"a", mask_to_hex(m.a)}, {"b", mask_to_hex(m.b)}, {"beta", m.beta}});
    return json{{"monomials", ms}, {"rhs", c.rhs}};
}

PolyConstraint poly_from_json(const json& j, int n) {
    require_n(n);
    PolyConstraint c;
    c.n = n;
    for (const auto& e : j.at("monomials")) {
        Monomial m;
        m.a = mask_field(e, "a");
        m.b = mask_field(e, "b");
        m.beta = e.at("beta").get<long long>();
        if (m.a & m.b) throw std::invalid_argument("monomial masks overlap");
        c.monomials.push_back(m);
    }
    c.rhs = j.at("rhs").get<long long>();
    return c;
}

json linear_to_json(const LinearConstraint& c) {
    return json{{"c", c.c}, {"rhs", c.rhs}};
}

LinearConstraint linear_from_json(const json& j) {
    LinearConstraint c;
    c.c = j.at("c").get<std::vector<long long>>();
    c.rhs = j.at("rhs").get<long long>();
    if (c.c.empty()) throw std::invalid_argument("linear constraint has no coefficients");
    return c;
}

json constraints_to_json(const ConstraintsDoc& doc) {
    json arr = json::array();
    size_t li = 0;
    for (size_t i = 0; i < doc.poly.size(); i++) {
        if (i < doc.entry_is_linear.size() && doc.entry_is_linear[i])
            arr.push_back(linear_to_json(doc.linear[li++]));
        else
            arr.push_back(poly_to_json(doc.poly[i]));
    }
    return json{{"n", doc.n}, {"constraints", arr}};
}

ConstraintsDoc constraints_from_json(const json& j) {
    ConstraintsDoc doc;
    doc.n = j.at("n").get<int>();
    require_n(doc.n);
    for (const auto& e : j.at("constraints")) {
        doc.entries++;
        if (e.contains("c")) {
            LinearConstraint l = linear_from_json(e);
            if (l.n() != doc.n) throw std::invalid_argument("linear constraint length mismatch");
            doc.linear.push_back(l);
            doc.poly.push_back(from_linear(l));
            doc.entry_is_linear.push_back(true);
        } else {
            doc.poly.push_back(poly_from_json(e, doc.n));
            doc.entry_is_linear.push_back(false);
        }
    }
    return doc;
}

json instance_to_json(const SatInstance& inst) {
    json cl = json::array();
    for (const auto& c : inst.clauses) {
        json one = json::array();
        for (const auto& l : c.lits) one.push_back(json{{"var", l.var}, {"pol", l.pol}});
        cl.push_back(one);
    }
    return json{{"n", inst.n}, {"clauses", cl}, {"seed", inst.seed}};
}

SatInstance instance_from_json(const json& j) {
    SatInstance inst;
    inst.n = j.at("n").get<int>();
    require_n(inst.n);
    inst.seed = j.at("seed").get<uint64_t>();
    for (const auto& c : j.at("clauses")) {
        if (c.size() != 3) throw std::invalid_argument("clause needs exactly three literals");
        Clause cl;
        for (size_t i = 0; i < 3; i++) {
            cl.lits[i].var = c.at(i).at("var").get<int>();
            cl.lits[i].pol = c.at(i).at("pol").get<int>();
            if (cl.lits[i].var < 0 || cl.lits[i].var >= inst.n)
                throw std::invalid_argument("literal variable out of range");
            if (cl.lits[i].pol != 1 && cl.lits[i].pol != -1)
                throw std::invalid_argument("literal polarity must be +/-1");
        }
        std::sort(cl.lits.begin(), cl.lits.end(),
                  [](const Literal& a, const Literal& b) { return a.var < b.var; });
        if (cl.lits[0].var == cl.lits[1].var || cl.lits[1].var == cl.lits[2].var)
            throw std::invalid_argument("clause variables must be distinct");
        inst.clauses.push_back(cl);
    }
    return inst;
}

json mds_to_json(const MdsResult& m) {
    json masks = json::array();
    for (uint64_t v : m.var_masks) masks.push_back(mask_to_hex(v));
    return json{{"clause_indices", m.clause_indices}, {"var_masks", masks}};
}

MdsResult mds_from_json(const json& j) {
    MdsResult m;
    m.clause_indices = j.at("clause_indices").get<std::vector<int>>();
    for (const auto& e : j.at("var_masks")) m.var_masks.push_back(mask_from_hex(e.get<std::string>()));
    if (m.clause_indices.size() != m.var_masks.size())
        throw std::invalid_argument("mds arrays differ in length");
    return m;
}

json ising_to_json(const IsingConstraint& c) {
    return json{{"h", c.h}, {"j", c.j}};
}

IsingConstraint ising_from_json(const json& j) {
    IsingConstraint c;
    c.h = j.at("h").get<std::vector<long long>>();
    c.j = j.at("j").get<std::vector<std::vector<long long>>>();
    size_t n = c.h.size();
    if (c.j.size() != n) throw std::invalid_argument("ising coupling matrix shape mismatch");
    for (size_t r = 0; r < n; r++) {
        if (c.j[r].size() != n) throw std::invalid_argument("ising coupling matrix shape mismatch");
        if (c.j[r][r] != 0) throw std::invalid_argument("ising coupling diagonal must be zero");
        for (size_t s = 0; s < n; s++)
            if (c.j[r][s] != c.j[s][r]) throw std::invalid_argument("ising coupling not symmetric");
    }
    return c;
}

json diffusor_to_json(const DiffusorSpec& d) {
    json j{{"x", mask_to_hex(d.diag_x)}, {"y", mask_to_hex(d.diag_y)},
           {"v", mask_to_hex(d.v)},      {"w", mask_to_hex(d.w)},
           {"theta", d.theta},           {"tag", d.tag == AngleTag::beta ? "beta" : "gamma"}};
    if (d.multi_pattern()) {
        j["support"] = d.support;
        json ps = json::array();
        for (uint64_t p : d.patterns) ps.push_back(mask_to_hex(p));
        j["patterns"] = ps;
    }
    return j;
}

DiffusorSpec diffusor_from_json(const json& j) {
    DiffusorSpec d;
    d.diag_x = mask_field(j, "x");
    d.diag_y = mask_field(j, "y");
    d.v = mask_field(j, "v");
    d.w = mask_field(j, "w");
    d.theta = j.at("theta").get<double>();
    std::string tag = j.at("tag").get<std::string>();
    if (tag == "beta")
        d.tag = AngleTag::beta;
    else if (tag == "gamma")
        d.tag = AngleTag::gamma;
    else
        throw std::invalid_argument("unknown angle tag");
    if (j.contains("patterns")) {
        d.support = j.at("support").get<std::vector<int>>();
        for (const auto& e : j.at("patterns")) d.patterns.push_back(mask_from_hex(e.get<std::string>()));
        if (d.patterns.empty()) throw std::invalid_argument("empty pattern list");
    }
    return d;
}

json program_to_json(const MixerProgram& p) {
    json layers = json::array();
    for (const auto& layer : p.layers) {
        json one = json::array();
        for (const auto& d : layer) one.push_back(diffusor_to_json(d));
        layers.push_back(one);
    }
    return json{{"layers", layers}};
}

MixerProgram program_from_json(const json& j) {
    MixerProgram p;
    for (const auto& layer : j.at("layers")) {
        std::vector<DiffusorSpec> one;
        for (const auto& d : layer) one.push_back(diffusor_from_json(d));
        p.layers.push_back(std::move(one));
    }
    return p;
}

std::string kind_to_string(AnsatzKind k) {
    switch (k) {
        case AnsatzKind::X: return "x";
        case AnsatzKind::MDS: return "mds";
        case AnsatzKind::MDS_SYMCOV: return "symcov";
    }
    throw std::invalid_argument("unknown ansatz kind");
}

AnsatzKind kind_from_string(const std::string& s) {
    if (s == "x") return AnsatzKind::X;
    if (s == "mds") return AnsatzKind::MDS;
    if (s == "symcov") return AnsatzKind::MDS_SYMCOV;
    throw std::invalid_argument("unknown ansatz kind: " + s);
}

json ansatz_to_json(const AnsatzSpec& a) {
    json blocks = json::array();
    for (const auto& b : a.init_blocks) {
        json ps = json::array();
        for (uint64_t p : b.patterns) ps.push_back(mask_to_hex(p));
        blocks.push_back(json{{"support", b.support}, {"patterns", ps}});
    }
    json j{{"kind", kind_to_string(a.kind)},
           {"n", a.n},
           {"phase_clauses", a.phase_clauses},
           {"mixer", program_to_json(a.mixer)},
           {"init_blocks", blocks},
           {"plus_mask", mask_to_hex(a.plus_mask)},
           {"uses_partial_mixers", a.uses_partial_mixers}};
    if (a.symcov) j["symcov"] = program_to_json(*a.symcov);
    return j;
}

AnsatzSpec ansatz_from_json(const json& j) {
    AnsatzSpec a;
    a.kind = kind_from_string(j.at("kind").get<std::string>());
    a.n = j.at("n").get<int>();
    require_n(a.n);
    a.phase_clauses = j.at("phase_clauses").get<std::vector<int>>();
    a.mixer = program_from_json(j.at("mixer"));
    if (j.contains("symcov")) a.symcov = program_from_json(j.at("symcov"));
    for (const auto& b : j.at("init_blocks")) {
        InitBlock blk;
        blk.support = b.at("support").get<std::vector<int>>();
        for (const auto& p : b.at("patterns"))
            blk.patterns.push_back(mask_from_hex(p.get<std::string>()));
        a.init_blocks.push_back(std::move(blk));
    }
    a.plus_mask = mask_field(j, "plus_mask");
    a.uses_partial_mixers = j.at("uses_partial_mixers").get<bool>();
    return a;
}

json schedule_to_json(const Schedule& s) {
    json j{{"alpha", s.alpha}, {"beta", s.beta}};
    if (!s.gamma.empty()) j["gamma"] = s.gamma;
    return j;
}

Schedule schedule_from_json(const json& j) {
    Schedule s;
    s.alpha = j.at("alpha").get<std::vector<double>>();
    s.beta = j.at("beta").get<std::vector<double>>();
    if (j.contains("gamma")) s.gamma = j.at("gamma").get<std::vector<double>>();
    if (s.beta.size() != s.alpha.size())
        throw std::invalid_argument("schedule alpha/beta lengths differ");
    if (!s.gamma.empty() && s.gamma.size() != s.alpha.size())
        throw std::invalid_argument("schedule gamma length differs");
    return s;
}

json fit_to_json(const CurveFit& f) {
    return json{{"A", f.A}, {"B", f.B}, {"mse", f.mse}};
}

CurveFit fit_from_json(const json& j) {
    CurveFit f;
    f.A = j.at("A").get<double>();
    f.B = j.at("B").get<double>();
    f.mse = j.at("mse").get<double>();
    return f;
}

std::string records_to_csv(const std::vector<BenchmarkRecord>& rs) {
    std::string out = "n,seed,kind,p,success\n";
    char buf[128];
    for (const auto& r : rs) {
        std::snprintf(buf, sizeof(buf), "%d,%" PRIu64 ",%s,%d,%.17g\n", r.n, r.seed,
                      kind_to_string(r.kind).c_str(), r.p, r.success);
        out += buf;
    }
    return out;
}

std::vector<BenchmarkRecord> records_from_csv(const std::string& text) {
    std::vector<BenchmarkRecord> out;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("n,", 0) == 0) continue;
        }
        std::istringstream ls(line);
        std::string field;
        BenchmarkRecord r;
        std::getline(ls, field, ',');
        r.n = std::stoi(field);
        std::getline(ls, field, ',');
        r.seed = std::stoull(field);
        std::getline(ls, field, ',');
        r.kind = kind_from_string(field);
        std::getline(ls, field, ',');
        r.p = std::stoi(field);
        std::getline(ls, field, ',');
        r.success = std::stod(field);
        out.push_back(r);
    }
    return out;
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(const std::string& data) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a64(data));
    return buf;
}

json manifest_to_json(const RunManifest& m) {
    return json{{"tool", m.tool},
                {"version", m.version.empty() ? kToolVersion : m.version},
                {"subcommand", m.subcommand},
                {"config", m.config},
                {"input_digests", m.input_digests},
                {"wall_ms", m.wall_ms}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out.good()) throw std::runtime_error("write failed for " + path);
}

json load_json_file(const std::string& path) {
    return json::parse(read_text_file(path));
}

std::string dump_json(const json& j, bool pretty) {
    return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

} // namespace symmix
