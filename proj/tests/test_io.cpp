#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "symmix/io.hpp"
#include "test_util.hpp"

using namespace symmix;
using namespace symmix::testutil;

namespace {

Term demo_term() {
    Term t;
    t.n = 6;
    t.x = 0x21;
    t.y = 0x02;
    t.v = 0x04;
    t.w = 0x18;
    return t;
}

bool same_term(const Term& a, const Term& b) {
    return a.n == b.n && a.x == b.x && a.y == b.y && a.v == b.v && a.w == b.w;
}

} // namespace

TEST_CASE("terms serialize as lowercase hex masks") {
    Term t = demo_term();
    json j = term_to_json(t);
    CHECK(j["n"] == 6);
    CHECK(j["x"] == "21");
    CHECK(j["y"] == "2");
    CHECK(j["v"] == "4");
    CHECK(j["w"] == "18");
    CHECK(same_term(term_from_json(j), t));

    json pref = j;
    pref["x"] = "0x21";
    pref["w"] = "0X18";
    CHECK(same_term(term_from_json(pref), t));

    Term zero;
    zero.n = 3;
    json jz = term_to_json(zero);
    CHECK(jz["x"] == "0");
    CHECK(same_term(term_from_json(jz), zero));
}

TEST_CASE("pairs carry exact rational coefficients") {
    HermitianPair p = make_pair(CRational{Rational(3, 2), Rational(-1, 7)}, demo_term());
    json j = pair_to_json(p);
    CHECK(j["re"] == "3/2");
    CHECK(j["im"] == "-1/7");
    HermitianPair q = pair_from_json(j);
    CHECK(q.alpha.re == p.alpha.re);
    CHECK(q.alpha.im == p.alpha.im);
    CHECK(same_term(q.term, p.term));

    std::vector<HermitianPair> ps = {p, make_pair(CRational(1), demo_term())};
    auto back = pairs_from_json(pairs_to_json(ps));
    REQUIRE(back.size() == 2);
    CHECK(back[1].alpha.re == Rational(1));
}

TEST_CASE("generator collections nest as arrays of arrays") {
    GeneratorCollection c;
    c.groups.push_back({{make_pair(CRational(1), demo_term())}});
    Term other;
    other.n = 6;
    other.v = 0x01;
    other.w = 0x02;
    c.groups.push_back({{make_pair(CRational(1), other), make_pair(CRational(2), other)}});

    json j = groups_to_json(c);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    GeneratorCollection back = groups_from_json(j);
    REQUIRE(back.groups.size() == 2);
    CHECK(back.groups[1].members.size() == 2);
    CHECK(back.groups[1].members[1].alpha.re == Rational(2));
    CHECK(back.total_members() == 3);
}

TEST_CASE("constraint files preserve mixed entry order") {
    ConstraintsDoc doc;
    doc.n = 4;

    LinearConstraint l;
    l.c = {1, -2, 0, 1};
    l.rhs = 1;

    PolyConstraint p;
    p.n = 4;
    p.monomials.push_back({0x1, 0x2, 3});
    p.rhs = 2;

    doc.poly.push_back(p);
    doc.entry_is_linear.push_back(false);
    doc.poly.push_back(from_linear(l));
    doc.linear.push_back(l);
    doc.entry_is_linear.push_back(true);
    doc.entries = 2;

    json j = constraints_to_json(doc);
    CHECK(j["n"] == 4);
    REQUIRE(j["constraints"].size() == 2);
    CHECK(j["constraints"][0].contains("monomials"));
    CHECK(j["constraints"][1].contains("c"));

    ConstraintsDoc back = constraints_from_json(j);
    CHECK(back.n == 4);
    CHECK(back.entries == 2);
    CHECK(!back.all_linear());
    REQUIRE(back.poly.size() == 2);
    REQUIRE(back.linear.size() == 1);
    CHECK(back.entry_is_linear == std::vector<bool>{false, true});
    CHECK(back.linear[0].c == l.c);
    CHECK(back.linear[0].rhs == 1);
    CHECK(back.poly[0].monomials[0].beta == 3);

    // all-linear round trip
    ConstraintsDoc lin;
    lin.n = 4;
    lin.poly.push_back(from_linear(l));
    lin.linear.push_back(l);
    lin.entry_is_linear.push_back(true);
    lin.entries = 1;
    ConstraintsDoc lb = constraints_from_json(constraints_to_json(lin));
    CHECK(lb.all_linear());
}

TEST_CASE("instances round trip and reject malformed clauses") {
    SatInstance inst = generate_satisfiable(9, 3).inst;
    SatInstance back = instance_from_json(instance_to_json(inst));
    CHECK(back.n == inst.n);
    CHECK(back.seed == inst.seed);
    REQUIRE(back.clauses.size() == inst.clauses.size());
    for (size_t i = 0; i < back.clauses.size(); i++)
        for (int m = 0; m < 3; m++) {
            CHECK(back.clauses[i].lits[m].var == inst.clauses[i].lits[m].var);
            CHECK(back.clauses[i].lits[m].pol == inst.clauses[i].lits[m].pol);
        }

    json j = instance_to_json(inst);
    json dup = j;
    dup["clauses"][0][1]["var"] = dup["clauses"][0][0]["var"];
    CHECK_THROWS(instance_from_json(dup));

    json badpol = j;
    badpol["clauses"][0][0]["pol"] = 2;
    CHECK_THROWS(instance_from_json(badpol));
}

TEST_CASE("ising constraints validate shape") {
    IsingConstraint c;
    c.h = {1, -2, 0};
    c.j = {{0, 3, 0}, {3, 0, -1}, {0, -1, 0}};
    IsingConstraint back = ising_from_json(ising_to_json(c));
    CHECK(back.h == c.h);
    CHECK(back.j == c.j);

    json j = ising_to_json(c);
    json asym = j;
    asym["j"][0][1] = 5;
    CHECK_THROWS(ising_from_json(asym));
    json diag = j;
    diag["j"][1][1] = 1;
    CHECK_THROWS(ising_from_json(diag));
}

TEST_CASE("diffusors and programs round trip both forms") {
    DiffusorSpec two = build_Q(0.45, 0x2, 0x8);
    two.diag_x = 0x1;
    two.tag = AngleTag::gamma;
    json jt = diffusor_to_json(two);
    CHECK(jt["tag"] == "gamma");
    DiffusorSpec tb = diffusor_from_json(jt);
    CHECK(tb.v == two.v);
    CHECK(tb.w == two.w);
    CHECK(tb.diag_x == two.diag_x);
    CHECK(tb.theta == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(!tb.multi_pattern());

    DiffusorSpec multi = make_pattern_diffusor({0, 2, 3}, {1, 2, 4}, AngleTag::beta);
    json jm = diffusor_to_json(multi);
    CHECK(jm.contains("patterns"));
    DiffusorSpec mb = diffusor_from_json(jm);
    CHECK(mb.multi_pattern());
    CHECK(mb.support == multi.support);
    CHECK(mb.patterns == multi.patterns);
    CHECK(mb.tag == AngleTag::beta);

    MixerProgram prog;
    prog.layers.push_back({two});
    prog.layers.push_back({multi, two});
    MixerProgram pb = program_from_json(program_to_json(prog));
    REQUIRE(pb.layers.size() == 2);
    CHECK(pb.layers[1].size() == 2);
    CHECK(pb.layers[1][0].multi_pattern());
    CHECK(pb.total_specs() == 3);
}

TEST_CASE("ansatz specs round trip with kind strings") {
    CHECK(kind_to_string(AnsatzKind::X) == "x");
    CHECK(kind_to_string(AnsatzKind::MDS) == "mds");
    CHECK(kind_to_string(AnsatzKind::MDS_SYMCOV) == "symcov");
    CHECK(kind_from_string("symcov") == AnsatzKind::MDS_SYMCOV);
    CHECK_THROWS(kind_from_string("bogus"));

    SatInstance inst = reduce(generate_satisfiable(9, 3).inst).inst;
    for (AnsatzKind kind : {AnsatzKind::X, AnsatzKind::MDS, AnsatzKind::MDS_SYMCOV}) {
        AnsatzSpec spec = build_ansatz(inst, kind);
        AnsatzSpec back = ansatz_from_json(ansatz_to_json(spec));
        CHECK(back.kind == spec.kind);
        CHECK(back.n == spec.n);
        CHECK(back.phase_clauses == spec.phase_clauses);
        CHECK(back.plus_mask == spec.plus_mask);
        CHECK(back.uses_partial_mixers == spec.uses_partial_mixers);
        CHECK(back.mixer.total_specs() == spec.mixer.total_specs());
        CHECK(back.symcov.has_value() == spec.symcov.has_value());
        if (spec.symcov) CHECK(back.symcov->layers.size() == spec.symcov->layers.size());
        REQUIRE(back.init_blocks.size() == spec.init_blocks.size());
        for (size_t i = 0; i < back.init_blocks.size(); i++) {
            CHECK(back.init_blocks[i].support == spec.init_blocks[i].support);
            CHECK(back.init_blocks[i].patterns == spec.init_blocks[i].patterns);
        }
    }
}

TEST_CASE("schedules round trip and validate lengths") {
    Schedule s;
    s.alpha = {0.1, 0.2};
    s.beta = {0.3, 0.4};
    s.gamma = {0.5, 0.6};
    Schedule back = schedule_from_json(schedule_to_json(s));
    CHECK(back.alpha == s.alpha);
    CHECK(back.beta == s.beta);
    CHECK(back.gamma == s.gamma);

    Schedule ng;
    ng.alpha = {0.1};
    ng.beta = {0.2};
    Schedule nb = schedule_from_json(schedule_to_json(ng));
    CHECK(nb.gamma.empty());

    json bad = schedule_to_json(s);
    bad["beta"] = {0.3};
    CHECK_THROWS(schedule_from_json(bad));
}

TEST_CASE("fits and packing results round trip") {
    CurveFit f;
    f.A = 0.875;
    f.B = 1.0375;
    f.mse = 1.25e-9;
    CurveFit fb = fit_from_json(fit_to_json(f));
    CHECK(fb.A == f.A);
    CHECK(fb.B == f.B);
    CHECK(fb.mse == f.mse);

    MdsResult m;
    m.clause_indices = {0, 2};
    m.var_masks = {0xb, 0x34};
    MdsResult mb = mds_from_json(mds_to_json(m));
    CHECK(mb.clause_indices == m.clause_indices);
    CHECK(mb.var_masks == m.var_masks);
}

TEST_CASE("benchmark records survive the csv round trip bit-exactly") {
    std::vector<BenchmarkRecord> rs;
    rs.push_back({12, 0xdeadbeefcafe1234ull, AnsatzKind::X, 6, 0.12345678901234567});
    rs.push_back({14, 7, AnsatzKind::MDS, 6, 1.0 / 3.0});
    rs.push_back({16, 8, AnsatzKind::MDS_SYMCOV, 6, 1e-17});

    std::string csv = records_to_csv(rs);
    CHECK(csv.rfind("n,seed,kind,p,success\n", 0) == 0);
    auto back = records_from_csv(csv);
    REQUIRE(back.size() == 3);
    for (size_t i = 0; i < 3; i++) {
        CHECK(back[i].n == rs[i].n);
        CHECK(back[i].seed == rs[i].seed);
        CHECK(back[i].kind == rs[i].kind);
        CHECK(back[i].p == rs[i].p);
        CHECK(back[i].success == rs[i].success);
    }

    // tolerate a missing header
    std::string body = csv.substr(csv.find('\n') + 1);
    CHECK(records_from_csv(body).size() == 3);
}

TEST_CASE("digests are stable fnv hashes") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(digest_hex("") == "cbf29ce484222325");
    CHECK(digest_hex("symmix") == digest_hex("symmix"));
    CHECK(digest_hex("symmix") != digest_hex("symmiy"));
    CHECK(digest_hex("x").size() == 16);
}

TEST_CASE("manifests carry tool, config and input digests") {
    RunManifest m;
    m.version = kToolVersion;
    m.subcommand = "search";
    m.config = {{"locality", 2}};
    m.input_digests["constraints"] = digest_hex("body");
    m.wall_ms = 12.5;
    json j = manifest_to_json(m);
    CHECK(j["tool"] == "symmix");
    CHECK(j["version"] == kToolVersion);
    CHECK(j["subcommand"] == "search");
    CHECK(j["config"]["locality"] == 2);
    CHECK(j["input_digests"]["constraints"] == digest_hex("body"));
    CHECK(j["wall_ms"].get<double>() >= 0.0);
}

TEST_CASE("text files round trip through the filesystem helpers") {
    std::string path = (std::filesystem::temp_directory_path() / "symmix_io_test.json").string();
    json j = {{"k", "v"}, {"arr", {1, 2, 3}}};
    std::string pretty = dump_json(j, true);
    CHECK(pretty.back() == '\n');
    CHECK(pretty.find("  \"arr\"") != std::string::npos);
    std::string compact = dump_json(j, false);
    CHECK(compact.back() == '\n');
    CHECK(compact.find(' ') == std::string::npos);

    write_text_file(path, pretty);
    CHECK(read_text_file(path) == pretty);
    json back = load_json_file(path);
    CHECK(back == j);
    std::remove(path.c_str());

    CHECK_THROWS(read_text_file("/nonexistent/definitely/missing.json"));
}
