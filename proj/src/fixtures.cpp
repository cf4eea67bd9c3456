#include "altsieve/fixtures.hpp"

#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "altsieve/blocks.hpp"
#include "altsieve/jordan.hpp"
#include "altsieve/repdata.hpp"
#include "altsieve/screener.hpp"
#include "altsieve/sieve.hpp"

namespace altsieve::fixtures {

using gmod::GModule;
using jordan::JordanType;
using repdata::Data;

namespace {

FactorMultiset fm(std::initializer_list<std::pair<std::string, int>> items) {
    FactorMultiset m;
    for (auto& [k, v] : items) m[k] = v;
    return m;
}

std::string fmset_to_string(const std::vector<FactorMultiset>& sets) {
    std::string s;
    for (const auto& m : sets) s += "{" + multiset_to_string(m) + "} ";
    return s;
}

std::vector<sieve::ClassConstraint> target_constraints(int n, int p, const std::string& target,
                                                       const std::string& kind) {
    const Data& data = Data::get();
    const auto& cat = data.catalogue(n, p);
    const auto& tgt = data.target(target);
    std::vector<sieve::ClassConstraint> out;
    auto G = perms::alt_group(n);
    for (const auto& id : cat.sieve_classes) {
        const perms::ClassRep* cr = G->find_class(id);
        if (!cr || cr->order % p == 0) continue;
        sieve::ClassConstraint c;
        c.h_class_id = id;
        c.order = cr->order;
        for (const auto* pat : tgt.patterns_of_order(cr->order)) {
            const auto& v = (kind == "vmin") ? pat->vmin : pat->lg;
            if (v) c.allowed.push_back(*v);
        }
        if (!c.allowed.empty()) out.push_back(std::move(c));
    }
    return out;
}

// criterion 1: trace sieve for Alt(5) mod 5 on the F4 minimal module
Result a1() {
    Result r{"A1 trace sieve alt5/F4 vmin", false, "", 0};
    const auto& cat = Data::get().catalogue(5, 5);
    auto sets = sieve::enumerate_factor_sets(cat, 26, target_constraints(5, 5, "F4", "vmin"));
    std::vector<FactorMultiset> expect = {fm({{"3", 6}, {"1", 8}}), fm({{"5", 1}, {"3", 7}}),
                                          fm({{"5", 3}, {"3", 3}, {"1", 2}})};
    std::sort(expect.begin(), expect.end());
    r.pass = (sets == expect);
    r.detail = r.pass ? "three multisets, as printed" : "got " + fmset_to_string(sets);
    return r;
}

// criterion 2: trace sieve for Alt(5) mod 5 on the E8 adjoint module
Result a2() {
    Result r{"A2 trace sieve alt5/E8 lg", false, "", 0};
    const auto& cat = Data::get().catalogue(5, 5);
    auto sets = sieve::enumerate_factor_sets(cat, 248, target_constraints(5, 5, "E8", "lg"));
    FactorMultiset first = fm({{"5", 28}, {"3", 28}, {"1", 24}});
    FactorMultiset last = fm({{"5", 1}, {"3", 55}, {"1", 78}});
    bool has_first = std::find(sets.begin(), sets.end(), first) != sets.end();
    bool has_last = std::find(sets.begin(), sets.end(), last) != sets.end();
    r.pass = (sets.size() == 7) && has_first && has_last;
    r.detail = "count " + std::to_string(sets.size()) + (r.pass ? " with the pinned first/last entries" : ": " + fmset_to_string(sets));
    return r;
}

// criterion 3: the five alt9 mod 2 pressures
Result a3() {
    Result r{"A3 pressures alt9/E8", false, "", 0};
    const auto& cat = Data::get().catalogue(9, 2);
    std::vector<FactorMultiset> sets = {
        fm({{"26", 1}, {"8_1", 8}, {"8_2", 8}, {"8_3", 8}, {"1", 30}}),
        fm({{"26", 8}, {"8_1", 1}, {"8_2", 1}, {"8_3", 1}, {"1", 16}}),
        fm({{"26", 4}, {"20", 2}, {"20*", 2}, {"8_1", 5}, {"8_2", 2}, {"1", 8}}),
        fm({{"48", 2}, {"26", 4}, {"8_3", 5}, {"1", 8}}),
        fm({{"48", 1}, {"26", 2}, {"20", 2}, {"20*", 2}, {"8_1", 3}, {"8_2", 3}, {"8_3", 2}, {"1", 4}}),
    };
    std::vector<int> expect = {-28, 0, 4, 0, 4};
    std::string got;
    bool ok = true;
    for (size_t i = 0; i < sets.size(); i++) {
        auto p = sieve::pressure(sets[i], cat);
        got += (i ? ", " : "") + std::to_string(p.value);
        ok = ok && (p.value == expect[i]) && p.applicable;
    }
    r.pass = ok;
    r.detail = "pressures " + got;
    return r;
}

// criterion 4: exterior squares of spin-module sums for alt9 mod 2
Result a4() {
    Result r{"A4 chop L2(8_1+8_2), L2(8_1+8_3) alt9/GF(4)", false, "", 0};
    const Data& data = Data::get();
    const auto& m81 = data.realized(9, 2, "8_1");
    const auto& m82 = data.realized(9, 2, "8_2");
    const auto& m83raw = data.realized(9, 2, "8_3");
    GModule m83 = m83raw;
    auto c1 = mtx::chop(gmod::ext_square(gmod::direct_sum(m81, m82)), 41);
    auto f1 = data.identify_factors(9, 2, c1);
    auto c2 = mtx::chop(gmod::ext_square(gmod::direct_sum(m81, m83)), 42);
    auto f2 = data.identify_factors(9, 2, c2);
    FactorMultiset e1 = fm({{"48", 1}, {"26", 2}, {"8_3", 2}, {"1", 4}});
    FactorMultiset e2 = fm({{"26", 2}, {"20", 1}, {"20*", 1}, {"8_1", 1}, {"8_2", 2}, {"1", 4}});
    // The labels 8_1/8_2 and 20/20* are fixed only up to the outer
    // automorphism; accept the image of the expected multiset under it.
    FactorMultiset e2b = fm({{"26", 2}, {"20", 1}, {"20*", 1}, {"8_2", 1}, {"8_1", 2}, {"1", 4}});
    bool ok1 = (f1 == e1);
    bool ok2 = (f2 == e2) || (f2 == e2b);
    r.pass = ok1 && ok2;
    r.detail = "L2(8_1+8_2) -> " + multiset_to_string(f1) + "; L2(8_1+8_3) -> " + multiset_to_string(f2);
    return r;
}

// criterion 5: induced-module structure at degrees 10 and 9
Result a5() {
    Result r{"A5 socle series perm(10), splitting perm(9)", false, "", 0};
    const Data& data = Data::get();
    auto layers10 = data.socle_series(gmod::perm_module(10, ff::Field::get(2, 1)));
    bool ok10 = layers10.size() == 3 && layers10[0] == fm({{"1", 1}}) && layers10[1] == fm({{"8", 1}}) &&
                layers10[2] == fm({{"1", 1}});
    auto layers9 = data.socle_series(gmod::perm_module(9, ff::Field::get(2, 1)));
    bool ok9 = layers9.size() == 1 && layers9[0] == fm({{"1", 1}, {"8_3", 1}});
    r.pass = ok10 && ok9;
    std::string s10, s9;
    for (auto& l : layers10) s10 += "[" + multiset_to_string(l) + "]";
    for (auto& l : layers9) s9 += "[" + multiset_to_string(l) + "]";
    r.detail = "perm(10): " + s10 + "; perm(9): " + s9;
    return r;
}

// criterion 6: projective covers from the Brauer trees, indecomposable counts
Result a6() {
    Result r{"A6 block calculus: pims and counts", false, "", 0};
    const Data& data = Data::get();
    std::ostringstream detail;
    bool ok = true;
    auto check_pim = [&](int n, int p, const std::string& S, const std::string& expect) {
        const auto& cat = data.catalogue(n, p);
        const auto* tree = cat.tree_containing(S);
        if (!tree) {
            ok = false;
            detail << " no tree for " << S << ";";
            return;
        }
        auto shape = blocks::pim(*tree, S).to_string();
        if (shape != expect) {
            ok = false;
            detail << " P(" << S << ")=" << shape << " (want " << expect << ");";
        }
    };
    check_pim(6, 5, "8", "8/1,8/8");
    check_pim(7, 7, "1", "1/5/1");
    check_pim(7, 7, "5", "5/1,10/5");
    check_pim(7, 7, "10", "10/10,5/10");
    check_pim(8, 5, "13", "13/1,43/13");
    // counts over every catalogued tree (covers included)
    int trees_checked = 0;
    auto count_tree = [&](const blocks::BrauerTreeLine& t) {
        auto ind = blocks::indecomposables(t);
        trees_checked++;
        if (int(ind.size()) != (t.defect_order - 1) * t.e()) {
            ok = false;
            detail << " count mismatch on block " << t.block_id << ";";
        }
        // closed under duality
        std::set<std::string> names;
        for (auto& s : ind) names.insert(s.to_string());
        for (auto& s : ind)
            if (!names.count(s.dual().to_string())) {
                ok = false;
                detail << " duality gap on block " << t.block_id << ";";
            }
    };
    for (auto [n, p] : repdata::catalogued_pairs())
        for (const auto& t : data.catalogue(n, p).trees) count_tree(t);
    for (const auto& t : data.cover_trees()) count_tree(t);
    r.pass = ok;
    std::string d = detail.str();
    r.detail = d.empty() ? ("pims match; " + std::to_string(trees_checked) + " trees counted") : d;
    return r;
}

// criterion 7: the explicit 133-dimensional module and the class tables
Result a7() {
    Result r{"A7 jordan engine alt6/GF(5)", false, "", 0};
    const Data& data = Data::get();
    auto G = perms::alt_group(6);
    const auto& u = G->named_reps.at("u");
    GModule M = gmod::direct_sum_power(data.realized(6, 5, "10"), 2);
    M = gmod::direct_sum(M, gmod::direct_sum_power(data.realized(6, 5, "5_1"), 3));
    M = gmod::direct_sum(M, gmod::direct_sum_power(data.realized(6, 5, "5_2"), 3));
    M = gmod::direct_sum(M, gmod::direct_sum_power(data.realized(6, 5, "P(8)"), 3));
    M = gmod::direct_sum(M, data.realized(6, 5, "8"));
    auto t = jordan::jordan_type(M, u);
    bool ok_type = (t == JordanType::parse("5^26,3")) && M.dim == 133;
    const auto* e7 = data.jordan_table("E7", 5);
    const auto* e8 = data.jordan_table("E8", 5);
    bool ok_e7 = e7 && e7->lookup("lg", JordanType::parse("5^26,3")) == std::vector<std::string>{"A4+A2"};
    bool ok_a4 = e8 && e8->lookup("lg", JordanType::parse("5^45,1^23")) == std::vector<std::string>{"A4"};
    bool ok_empty = e8 && e8->lookup("lg", JordanType::parse("5^46,3^6")).empty();
    r.pass = ok_type && ok_e7 && ok_a4 && ok_empty;
    r.detail = "u acts as " + t.to_string() + " on dim " + std::to_string(M.dim) +
               (ok_e7 ? "; matching the cited order-5 class" : "; E7 lookup failed") +
               (ok_a4 && ok_empty ? "; E8 table lookups as printed" : "; E8 lookup failed");
    return r;
}

// criterion 8: restrictions from alt8 to alt7 in characteristic 2
Result a8() {
    Result r{"A8 restriction fixtures alt8 -> alt7", false, "", 0};
    const Data& data = Data::get();
    auto e = perms::point_stabilizer_embedding(8);
    auto c64 = mtx::chop(gmod::restrict_along(data.realized(8, 2, "64"), e), 7);
    auto f64 = data.identify_factors(7, 2, c64);
    bool ok64 = f64 == fm({{"20", 1}, {"14", 3}, {"1", 2}});
    bool ok_rest = true;
    std::string who;
    for (const std::string lab : {"4", "4*", "6", "14", "20", "20*"}) {
        auto c = mtx::chop(gmod::restrict_along(data.realized(8, 2, lab), e), 8);
        if (c.factors.size() != 1 || c.factors[0].multiplicity != 1) {
            ok_rest = false;
            who += " " + lab;
        }
    }
    r.pass = ok64 && ok_rest;
    r.detail = "64 restricts to " + multiset_to_string(f64) +
               (ok_rest ? "; all other simples restrict irreducibly" : "; reducible restriction at" + who);
    return r;
}

// criterion 9: the end-to-end screener fixture
Result a9() {
    Result r{"A9 screener alt6/E7/p5 both", false, "", 0};
    screener::CaseConfig cfg;
    cfg.group_n = 6;
    cfg.target = "E7";
    cfg.prime = 5;
    cfg.kind = screener::ModuleKind::Both;
    auto rep = screener::run_case(cfg);
    auto survivors = rep.survivors();
    FactorMultiset want_v = fm({{"10", 4}, {"8", 2}});
    FactorMultiset want_l = fm({{"10", 2}, {"8", 10}, {"5_1", 3}, {"5_2", 3}, {"1", 3}});
    bool found = false;
    bool extras = false;
    std::string extra_desc;
    for (const auto* s : survivors) {
        if (s->vmin == want_v && s->lg == want_l) {
            // surviving structures must be the printed ones
            bool v_ok = s->vmin_structures.size() == 1 && s->vmin_structures[0] == "10^4 + 8^2";
            bool l_ok = s->lg_structures.size() == 1 && s->lg_structures[0] == "10^2 + 5_1^3 + 5_2^3 + 8 + P(8)^3";
            found = v_ok && l_ok;
            if (!found)
                extra_desc += " [structures: v=" + (s->vmin_structures.empty() ? "-" : s->vmin_structures[0]) +
                              " l=" + (s->lg_structures.empty() ? "-" : s->lg_structures[0]) + "]";
        } else {
            extras = true;
            extra_desc += " extra survivor [" + multiset_to_string(s->vmin) + " | " + multiset_to_string(s->lg) + "]";
        }
    }
    bool all_flagged = true;
    for (const auto& p : rep.pairs)
        if (p.verdict.type == screener::Verdict::Survives) continue;
        else if (p.verdict.rule.empty()) all_flagged = false;
    r.pass = found && !extras && all_flagged;
    r.detail = std::to_string(survivors.size()) + " surviving pair(s)" + extra_desc;
    return r;
}

// random module pool for the property suites
GModule random_small_module(std::mt19937_64& rng, int n, int p) {
    const Data& data = Data::get();
    const auto& cat = data.catalogue(n, p);
    std::vector<std::string> labels;
    for (const auto& s : cat.simples)
        if (s.dim <= 6) labels.push_back(s.label);
    GModule M = data.realized(n, p, labels[rng() % labels.size()]);
    int extra = int(rng() % 2);
    for (int i = 0; i < extra; i++) {
        const auto& other = data.realized(n, p, labels[rng() % labels.size()]);
        if (M.dim + other.dim <= 12) M = gmod::direct_sum(M, other);
    }
    if (rng() % 3 == 0) M = gmod::dual(M);
    return M;
}

Result a10() {
    Result r{"A10 property suites", false, "", 0};
    const Data& data = Data::get();
    std::ostringstream detail;
    bool ok = true;

    // exterior-square identity at chop level on 50 random pairs
    {
        std::mt19937_64 rng(2026);
        int pairs = 0;
        while (pairs < 50) {
            int n = 5 + int(rng() % 2);
            int p = (rng() % 2 == 0) ? 2 : 5;
            if (n == 6 && p == 2) p = 5;  // keep the pool cheap
            GModule A = random_small_module(rng, n, p);
            GModule B = random_small_module(rng, n, p);
            if (A.dim + B.dim > 16) continue;
            pairs++;
            auto lhs = data.identify_factors(n, p, mtx::chop(gmod::ext_square(gmod::direct_sum(A, B)), rng()));
            FactorMultiset rhs;
            for (auto& [lab, m] : data.identify_factors(n, p, mtx::chop(gmod::ext_square(A), rng()))) rhs[lab] += m;
            for (auto& [lab, m] : data.identify_factors(n, p, mtx::chop(gmod::ext_square(B), rng()))) rhs[lab] += m;
            for (auto& [lab, m] : data.identify_factors(n, p, mtx::chop(gmod::tensor(A, B), rng()))) rhs[lab] += m;
            if (lhs != rhs) {
                ok = false;
                detail << " L2 identity failed (alt" << n << " mod " << p << ", dims " << A.dim << "+" << B.dim
                       << ");";
                break;
            }
        }
    }

    // radical/residual duality on 20 random modules
    if (ok) {
        std::mt19937_64 rng(777);
        for (int t = 0; t < 20; t++) {
            int n = 5;
            int p = (t % 2 == 0) ? 2 : 5;
            const auto& cat = data.catalogue(n, p);
            GModule M = random_small_module(rng, n, p);
            // random label subset I
            std::vector<const GModule*> I;
            std::vector<GModule> stash;
            std::vector<std::string> Ilabels;
            for (const auto& s : cat.simples)
                if (rng() % 2 == 0 && s.dim <= M.dim) {
                    stash.push_back(data.realized(n, p, s.label));
                    Ilabels.push_back(s.label);
                }
            if (stash.empty()) {
                stash.push_back(data.realized(n, p, "1"));
                Ilabels.push_back("1");
            }
            for (auto& m : stash) {
                if (m.F->k != M.F->k) m = gmod::extend_scalars(m, *M.F);
                I.push_back(&m);
            }
            auto rad_dual = gmod::radical_wrt(gmod::dual(M), I);
            auto resid = gmod::residual_wrt(M, I);
            if (rad_dual.dim() != M.dim - resid.dim()) {
                ok = false;
                detail << " radical/residual duality failed (dims " << rad_dual.dim() << " vs " << M.dim << "-"
                       << resid.dim() << ");";
                break;
            }
        }
    }

    // sieve versus brute force for all total dims <= 30
    if (ok) {
        for (auto [n, p] : std::vector<std::pair<int, int>>{{5, 5}, {5, 2}, {6, 5}}) {
            const auto& cat = data.catalogue(n, p);
            auto cons = target_constraints(n, p, "F4", "vmin");
            for (int dim = 1; dim <= 30 && ok; dim++) {
                auto fast = sieve::enumerate_factor_sets(cat, dim, cons);
                // independent brute force
                std::vector<FactorMultiset> slow;
                std::vector<const repdata::SimpleInfo*> items;
                for (const auto& s : cat.simples) items.push_back(&s);
                std::function<void(size_t, int, FactorMultiset&)> rec = [&](size_t i, int rem, FactorMultiset& cur) {
                    if (rem == 0) {
                        for (const auto& c : cons) {
                            poly::Cyclotomic tot;
                            int m = 1;
                            for (auto& [lab, mult] : cur) m = int(std::lcm(m, cat.trace_of(lab, c.h_class_id).m));
                            tot.m = m;
                            tot.coeffs.assign(std::max<size_t>(poly::cyclotomic_poly(m).size() - 1, 1), 0);
                            for (auto& [lab, mult] : cur) {
                                auto tv = poly::lift_conductor(cat.trace_of(lab, c.h_class_id), m);
                                for (size_t j = 0; j < tv.coeffs.size(); j++) tot.coeffs[j] += mult * tv.coeffs[j];
                            }
                            if (tot.is_rational()) {
                                bool hit = false;
                                for (const auto& a : c.allowed)
                                    if (a.is_rational() && a.rational_value() == tot.rational_value()) hit = true;
                                if (!hit) return;
                            }
                        }
                        slow.push_back(cur);
                        return;
                    }
                    if (i == items.size()) return;
                    for (int mult = rem / items[i]->dim; mult >= 0; mult--) {
                        if (mult) cur[items[i]->label] = mult;
                        else cur.erase(items[i]->label);
                        if (rem - mult * items[i]->dim >= 0) rec(i + 1, rem - mult * items[i]->dim, cur);
                    }
                    cur.erase(items[i]->label);
                };
                FactorMultiset cur;
                rec(0, dim, cur);
                std::sort(slow.begin(), slow.end());
                if (fast != slow) {
                    ok = false;
                    detail << " sieve/brute-force mismatch at alt" << n << " mod " << p << " dim " << dim << ";";
                }
            }
        }
    }

    // chop seed independence over 5 seeds
    if (ok) {
        GModule M = gmod::ext_square(data.realized(7, 2, "14"));
        FactorMultiset ref;
        for (uint64_t seed = 1; seed <= 5; seed++) {
            auto f = data.identify_factors(7, 2, mtx::chop(M, seed));
            if (seed == 1) ref = f;
            else if (f != ref) {
                ok = false;
                detail << " chop result depends on seed;";
                break;
            }
        }
    }

    r.pass = ok;
    std::string d = detail.str();
    r.detail = d.empty() ? "exterior-square identity, radical duality, sieve oracle, seed independence" : d;
    return r;
}

}  // namespace

Result criterion(int number) {
    using Fn = std::function<Result()>;
    static const std::vector<Fn> fns = {a1, a2, a3, a4, a5, a6, a7, a8, a9, a10};
    if (number < 1 || number > int(fns.size())) throw PreconditionViolated("criterion number out of range");
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
        r = fns[size_t(number - 1)]();
    } catch (const std::exception& e) {
        r.name = "A" + std::to_string(number);
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<Result> run_all() {
    std::vector<Result> out;
    for (int i = 1; i <= 10; i++) out.push_back(criterion(i));
    return out;
}

}  // namespace altsieve::fixtures
