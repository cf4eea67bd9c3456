#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "altsieve/sieve.hpp"

using namespace altsieve;
using namespace altsieve::sieve;
using repdata::Data;

namespace {
FactorMultiset fm(std::initializer_list<std::pair<std::string, int>> items) {
    FactorMultiset m;
    for (auto& [k, v] : items) m[k] = v;
    return m;
}
ClassConstraint ints(const std::string& cls, int order, std::initializer_list<long long> vals) {
    ClassConstraint c;
    c.h_class_id = cls;
    c.order = order;
    for (long long v : vals) {
        poly::Cyclotomic cv;
        cv.m = 1;
        cv.coeffs = {v};
        c.allowed.push_back(cv);
    }
    return c;
}
}  // namespace

TEST_CASE("enumeration: empty dimension and trivial instances") {
    const auto& cat = Data::get().catalogue(5, 5);
    auto sets = enumerate_factor_sets(cat, 0, {});
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].empty());
    // with no constraints, dimension 4 over {1,3,5} has two solutions: 1^4, 3+1
    auto s4 = enumerate_factor_sets(cat, 4, {});
    CHECK(s4.size() == 2);
}

TEST_CASE("the printed Alt(5) mod 5 F4 sieve") {
    const auto& cat = Data::get().catalogue(5, 5);
    auto sets = enumerate_factor_sets(cat, 26, {ints("2,2", 2, {2, -6}), ints("3", 3, {-1, 8})});
    std::vector<FactorMultiset> expect = {fm({{"3", 6}, {"1", 8}}), fm({{"5", 1}, {"3", 7}}),
                                          fm({{"5", 3}, {"3", 3}, {"1", 2}})};
    std::sort(expect.begin(), expect.end());
    CHECK(sets == expect);
    // every returned multiset re-checks its trace sums exactly
    for (const auto& s : sets) {
        long long t = 0;
        for (auto& [lab, m] : s) t += m * cat.trace_of(lab, "2,2").rational_value();
        CHECK((t == 2 || t == -6));
    }
}

TEST_CASE("pressure values and additivity") {
    const auto& cat9 = Data::get().catalogue(9, 2);
    auto p1 = pressure(fm({{"26", 1}, {"8_1", 8}, {"8_2", 8}, {"8_3", 8}, {"1", 30}}), cat9);
    CHECK(p1.value == -28);
    CHECK(p1.applicable);
    auto a = fm({{"26", 2}, {"1", 1}});
    auto b = fm({{"20", 1}, {"1", 2}});
    auto ab = fm({{"26", 2}, {"20", 1}, {"1", 3}});
    CHECK(pressure(ab, cat9).value == pressure(a, cat9).value + pressure(b, cat9).value);
    // no trivials and no cohomology carriers: pressure 0
    CHECK(pressure(fm({{"8_3", 4}}), cat9).value == 0);
}

TEST_CASE("pressure verdicts") {
    const auto& cat9 = Data::get().catalogue(9, 2);
    auto r1 = pressure_verdict(fm({{"26", 1}, {"8_1", 8}, {"8_2", 8}, {"8_3", 8}, {"1", 30}}), cat9);
    CHECK(r1.verdict == Verdict::FixesLine);
    CHECK(r1.rule == "pressure-nonpositive");
    // rule b: pressure 1 but a factor with 2-dimensional cohomology
    auto r2 = pressure_verdict(fm({{"26", 1}, {"78", 2}, {"1", 2}, {"8_3", 8}}), cat9);
    CHECK(r2.verdict == Verdict::FixesLine);
    CHECK(r2.rule == "h1-exceeds-pressure");
    // zero trivials: inconclusive
    auto r3 = pressure_verdict(fm({{"26", 3}}), cat9);
    CHECK(r3.verdict == Verdict::Inconclusive);
}

TEST_CASE("strict parity at Alt(6) mod 3") {
    const auto& cat = Data::get().catalogue(6, 3);
    // the E6 minimal-module case 9,4^3,3_1,1^3: relaxed pressure is positive,
    // the sharper parity count fixes a line
    auto f = fm({{"9", 1}, {"4", 3}, {"3_1", 1}, {"1", 3}});
    CHECK(pressure_verdict(f, cat, false).verdict == Verdict::Inconclusive);
    auto strict = pressure_verdict(f, cat, true);
    CHECK(strict.verdict == Verdict::FixesLine);
    CHECK(strict.rule == "strict-parity");
    // with four carriers the parity rule is satisfied
    auto g = fm({{"9", 1}, {"4", 4}, {"3_1", 1}, {"1", 3}});
    CHECK(pressure_verdict(g, cat, true).verdict == Verdict::Inconclusive);
}

TEST_CASE("bespoke Alt(5) mod 2 bound") {
    const auto& cat = Data::get().catalogue(5, 2);
    // E8-style: at least 8 unit blocks; 8+2b trivials need 16+3b twos
    auto f = fm({{"4", 40}, {"2_1", 10}, {"2_2", 5}, {"1", 16}});  // b=4 -> need 28
    auto r = alt5_p2_bound(f, 8, cat);
    CHECK(r.verdict == Verdict::FixesLine);
    CHECK(r.rule == "dim2-deficit");
    auto g = fm({{"2_1", 14}, {"2_2", 14}, {"1", 8}});  // need 16, have 28
    CHECK(alt5_p2_bound(g, 8, cat).verdict == Verdict::Inconclusive);
    CHECK(alt5_p2_bound(fm({{"4", 5}}), 8, cat).verdict == Verdict::Inconclusive);
    CHECK_THROWS_AS(alt5_p2_bound(f, 8, Data::get().catalogue(5, 3)), PreconditionViolated);
}

TEST_CASE("bespoke Alt(8) mod 2 pattern rule") {
    const auto& cat = Data::get().catalogue(8, 2);
    auto bad = fm({{"14", 8}, {"6", 17}, {"4", 2}, {"4*", 2}, {"1", 18}});
    auto r = alt8_p2_no20_check(bad, cat);
    CHECK(r.verdict == Verdict::FixesLine);  // fewer 6s than trivials
    auto ok = fm({{"14", 2}, {"6", 3}, {"1", 2}});
    CHECK(alt8_p2_no20_check(ok, cat).verdict == Verdict::Inconclusive);
    auto with20 = fm({{"20", 1}, {"1", 1}});
    CHECK_THROWS_AS(alt8_p2_no20_check(with20, cat), PreconditionViolated);
}
