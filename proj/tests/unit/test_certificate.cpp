#include <memalg/certificate.hpp>
#include <memalg/error.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/models.hpp>
#include <memalg/universality.hpp>

#include <doctest.h>

using namespace memalg;

namespace {
Machine m(const char * text) { return parse_machine(text); }

const char * const0 = "machine const0\nstates 0 1\nfn c: 0->0, 1->0\n";
const char * const1 = "machine const1\nstates 0 1\nfn c: 0->1, 1->1\n";
const char * ident = "machine identity\nstates 0 1\nfn id: 0->0, 1->1\n";
}

TEST_CASE("universality verdicts come from the cardinal comparison")
{
    auto r = universality_report();
    REQUIRE(r.verdicts.size() == 3);
    for (auto & v : r.verdicts) {
        CHECK(v.complete());
        CHECK(v.family_bound == Cardinal::beth(1));
    }
    CHECK(r.rows[r.simulator].states == Cardinal::beth(1));
    CHECK(*r.rows[r.simulator].transitions == Cardinal::beth(2));
    auto text = format_universality(r);
    CHECK(text.find("turing: sup |T| = Beth(1) <= |S| = Beth(1) -> UMM-complete") != std::string::npos);
    CHECK(text == format_universality(universality_report()));
}

TEST_CASE("certificate text round-trips")
{
    Certificate c{"iso", {}, {}};
    c.add("result", "yes");
    c.add("g", "a -> b");
    c.add("g", "b -> a");
    c.add_block("a", "machine x\nstates a\n");
    auto text = format_certificate(c);
    auto back = parse_certificate(text);
    CHECK(back.kind == "iso");
    CHECK(back.all("g") == std::vector<std::string>{"a -> b", "b -> a"});
    CHECK(*back.block("a") == "machine x\nstates a\n");
    CHECK(format_certificate(back) == text);

    CHECK_THROWS_AS(parse_certificate(""), ParseError);
    CHECK_THROWS_AS(parse_certificate("memalg certificate\nresult: yes\n"), ParseError);
    CHECK_THROWS_AS(parse_certificate("memalg certificate\nkind: iso\nbegin a\n"), ParseError);
    CHECK_THROWS_AS(parse_certificate("memalg certificate\nkind: iso\nnonsense\n"), ParseError);
}

TEST_CASE("isomorphism certificates")
{
    auto a = m(const0), b = m(const1);
    auto c = iso_certificate(a, b, find_isomorphism(a, b));
    auto v = verify_certificate(parse_certificate(format_certificate(c)));
    CHECK(v.valid);
    CHECK(v.method == "witness checked");

    auto bad = c;
    for (auto & [k, val] : bad.fields)
        if (k == "g")
            val = val == "0 -> 1" ? "0 -> 0" : "1 -> 1";
    CHECK_FALSE(verify_certificate(bad).valid);

    auto neg = iso_certificate(a, m(ident), std::nullopt);
    v = verify_certificate(neg);
    CHECK(v.valid);
    CHECK(v.method == "re-decided by search");
    CHECK_FALSE(verify_certificate(iso_certificate(a, b, std::nullopt)).valid);
}

TEST_CASE("completeness certificates")
{
    auto full = full_machine(StateSet::numbered(3));
    auto b = m(const1);
    auto c = complete_certificate(full, b, is_complete(full, b));
    CHECK(verify_certificate(parse_certificate(format_certificate(c))).valid);

    auto tampered = c;
    for (auto & [k, val] : tampered.fields)
        if (k == "keep-states")
            val = "s0,s2";
    CHECK_FALSE(verify_certificate(tampered).valid);
}

TEST_CASE("sub-machine certificates")
{
    auto a = m("machine a\nstates 0 1 2\nfn f: 0->1, 1->0, 2->2\nfn g: 0->0, 1->0, 2->1\n");
    auto b = m("machine b\nstates 1 0\nfn f: 0->1, 1->0\n");
    auto w = is_sub_machine(a, b);
    REQUIRE(w);
    CHECK(verify_certificate(submachine_certificate(a, b, w)).valid);
}

TEST_CASE("recorded outputs are recomputed")
{
    Certificate c{"card", {}, {}};
    c.add("template", "finite-turing");
    c.add("k", "3");
    c.add("m", "2");
    c.add("n", "4");
    auto out = replay(c);
    CHECK(out.find("|S| = Finite(192)") != std::string::npos);
    c.add_block("output", out);
    CHECK(verify_certificate(c).valid);
    c.blocks[0].second += "extra\n";
    CHECK_FALSE(verify_certificate(c).valid);

    Certificate unknown{"nonsense", {}, {}};
    unknown.add_block("output", "");
    CHECK_FALSE(verify_certificate(unknown).valid);
}
