#include <random>

#include "doctest.h"
#include "ltlfix/errors.hpp"
#include "ltlfix/formula.hpp"
#include "ltlfix/harness.hpp"
#include "test_helpers.hpp"

using namespace ltlfix;

TEST_CASE("parse/print round-trip on 1000 random formulas") {
    std::mt19937_64 rng(42);
    const std::vector<std::string> atoms{"p", "q", "r"};
    for (int i = 0; i < 1000; ++i) {
        FormulaPtr f = harness::randomFormula(rng, atoms, 5);
        FormulaPtr g = parse(print(f));
        CAPTURE(print(f));
        CHECK(equal(f, g));
    }
}

TEST_CASE("parser precedence and associativity") {
    // U binds tighter than &&, which binds tighter than ||, then ->, then <->.
    CHECK(print(parse("a U b && c")) == print(parse("(a U b) && c")));
    CHECK(print(parse("a || b && c")) == print(parse("a || (b && c)")));
    CHECK(print(parse("a -> b || c")) == print(parse("a -> (b || c)")));
    CHECK(print(parse("a <-> b -> c")) == print(parse("a <-> (b -> c)")));
    // Right associativity of U and ->.
    CHECK(print(parse("a U b U c")) == print(parse("a U (b U c)")));
    CHECK(print(parse("a -> b -> c")) == print(parse("a -> (b -> c)")));
    // Unary operators bind tightest.
    CHECK(print(parse("!p && q")) == print(parse("(!p) && q")));
    CHECK(print(parse("G p U q")) == print(parse("(G p) U q")));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse("G (p"), ParseError);
    CHECK_THROWS_AS(parse("p &&"), ParseError);
    CHECK_THROWS_AS(parse("p @ q"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("p && && q");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos() > 0);
    }
}

TEST_CASE("alphabet-checked parse rejects undeclared atoms") {
    const std::vector<std::string> alphabet{"p", "q"};
    CHECK_NOTHROW(parse("G (p -> F q)", alphabet));
    CHECK_THROWS_AS(parse("G (p -> F r)", alphabet), ParseError);
}

TEST_CASE("subformulas are deduplicated pre-order") {
    FormulaPtr f = parse("G !p");
    std::vector<FormulaPtr> sf = subformulas(f);
    REQUIRE(sf.size() == 3);
    CHECK(print(sf[0]) == print(f));
    CHECK(print(sf[1]) == print(parse("!p")));
    CHECK(print(sf[2]) == print(parse("p")));

    // Structurally repeated subtrees appear once.
    std::vector<FormulaPtr> sf2 = subformulas(parse("p && p"));
    CHECK(sf2.size() == 2);
}

TEST_CASE("replaceOccurrences rewrites every structural match") {
    FormulaPtr f = parse("p && G p");
    FormulaPtr out = replaceOccurrences(f, parse("p"), parse("q"));
    CHECK(print(out) == print(parse("q && G q")));
    CHECK_THROWS_AS(replaceOccurrences(f, parse("r"), parse("q")), std::invalid_argument);
}

TEST_CASE("normalizeToCore uses core operators only") {
    std::mt19937_64 rng(7);
    const std::vector<std::string> atoms{"p", "q"};
    for (int i = 0; i < 200; ++i) {
        FormulaPtr f = harness::randomFormula(rng, atoms, 4);
        for (const FormulaPtr& sub : subformulas(normalizeToCore(f))) {
            Op op = sub->op();
            CHECK(op != Op::Globally);
            CHECK(op != Op::Finally);
            CHECK(op != Op::WeakUntil);
            CHECK(op != Op::Implies);
            CHECK(op != Op::Iff);
        }
    }
}

TEST_CASE("normalizeToCore preserves lasso semantics on 500 random formulas") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> atoms{"p", "q"};
    Alphabet alphabet(atoms);
    std::vector<LassoWord> lassos = testutil::allLassos(alphabet, 3);
    for (int i = 0; i < 500; ++i) {
        FormulaPtr f = harness::randomFormula(rng, atoms, 4);
        FormulaPtr core = normalizeToCore(f);
        // Spot-check 8 lassos per formula to keep runtime in check.
        for (int j = 0; j < 8; ++j) {
            const LassoWord& w = lassos[rng() % lassos.size()];
            CAPTURE(print(f));
            CHECK(evaluateOnLasso(f, w) == evaluateOnLasso(core, w));
        }
    }
}

TEST_CASE("conjoin folds right and defaults to true") {
    CHECK(print(conjoin({})) == print(parse("true")));
    CHECK(print(conjoin({parse("p")})) == print(parse("p")));
    CHECK(print(conjoin({parse("a"), parse("b"), parse("c")})) ==
          print(parse("a && (b && c)")));
}

TEST_CASE("atomsOf returns sorted unique names") {
    std::vector<std::string> atoms = atomsOf(parse("q && (p U q) && G p"));
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0] == "p");
    CHECK(atoms[1] == "q");
    CHECK(atomsOf(parse("true")).empty());
}

TEST_CASE("formula size counts AST nodes") {
    CHECK(parse("p")->size() == 1);
    CHECK(parse("G p")->size() == 2);
    CHECK(parse("p U q")->size() == 3);
    CHECK(parse("G (p -> X q)")->size() == 5);
}
