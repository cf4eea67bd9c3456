#include "altsieve/sieve.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace altsieve::sieve {

namespace {

struct Item {
    std::string label;
    int dim = 0;
    std::vector<poly::Cyclotomic> traces;  // lifted to the class conductor
};

struct ClassCtx {
    ClassConstraint cons;
    int conductor = 1;
    size_t coords = 1;
    bool rational = true;  // every item value and every allowed value rational
    // per-item rational values when rational
    std::vector<long long> rvals;
    // suffix ratio bounds as exact fractions value/dim: (num, den)
    std::vector<std::pair<long long, long long>> min_ratio, max_ratio;
    std::vector<long long> allowed_ints;
};

bool frac_le(long long an, long long ad, long long bn, long long bd) {
    // a/b <= c/d with positive denominators
    return an * bd <= bn * ad;
}

}  // namespace

std::vector<FactorMultiset> enumerate_factor_sets(const repdata::Catalogue& cat, int total_dim,
                                                  const std::vector<ClassConstraint>& constraints) {
    if (total_dim < 0) throw PreconditionViolated("total_dim must be non-negative");
    std::vector<Item> items;
    for (const auto& s : cat.simples) {
        Item it;
        it.label = s.label;
        it.dim = s.dim;
        items.push_back(it);
    }
    // largest dimension first; ties by label for determinism
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.dim != b.dim) return a.dim > b.dim;
        return a.label < b.label;
    });

    std::vector<ClassCtx> ctx;
    for (const auto& cons : constraints) {
        ClassCtx c;
        c.cons = cons;
        int m = 1;
        for (const auto& v : cons.allowed) m = int(std::lcm(m, v.m));
        for (auto& it : items) {
            auto t = cat.trace_of(it.label, cons.h_class_id);
            m = int(std::lcm(m, t.m));
        }
        c.conductor = m;
        auto phim = poly::cyclotomic_poly(m);
        c.coords = phim.size() - 1;
        // lift item traces
        std::vector<poly::Cyclotomic> lifted;
        for (auto& it : items) lifted.push_back(poly::lift_conductor(cat.trace_of(it.label, cons.h_class_id), m));
        c.rational = true;
        for (auto& v : lifted)
            if (!v.is_rational()) c.rational = false;
        for (const auto& a : cons.allowed)
            if (!a.is_rational()) c.rational = false;
        if (c.rational) {
            for (auto& v : lifted) c.rvals.push_back(v.rational_value());
            for (const auto& a : cons.allowed) c.allowed_ints.push_back(a.rational_value());
            int n = int(items.size());
            c.min_ratio.assign(n + 1, {1, 1});
            c.max_ratio.assign(n + 1, {1, 1});
            for (int i = n - 1; i >= 0; i--) {
                long long vn = c.rvals[i], vd = items[size_t(i)].dim;
                auto mn = std::make_pair(vn, vd), mx = std::make_pair(vn, vd);
                if (i + 1 < n) {
                    auto& pn = c.min_ratio[size_t(i) + 1];
                    auto& px = c.max_ratio[size_t(i) + 1];
                    if (frac_le(pn.first, pn.second, mn.first, mn.second)) mn = pn;
                    if (frac_le(mx.first, mx.second, px.first, px.second)) mx = px;
                }
                c.min_ratio[size_t(i)] = mn;
                c.max_ratio[size_t(i)] = mx;
            }
        }
        // store lifted traces back into items
        for (size_t i = 0; i < items.size(); i++) items[i].traces.push_back(lifted[i]);
        ctx.push_back(std::move(c));
    }

    std::vector<FactorMultiset> out;
    int nitems = int(items.size());
    std::vector<int> mults(size_t(nitems), 0);
    // running totals per class, coordinates over the class conductor
    std::vector<std::vector<long long>> totals;
    for (auto& c : ctx) totals.push_back(std::vector<long long>(c.coords, 0));

    std::function<void(int, int)> rec = [&](int i, int remaining) {
        if (remaining == 0) {
            for (size_t ci = 0; ci < ctx.size(); ci++) {
                const auto& c = ctx[ci];
                const auto& tot = totals[ci];
                bool rational = true;
                for (size_t j = 1; j < tot.size(); j++)
                    if (tot[j]) rational = false;
                if (rational) {
                    long long v = tot.empty() ? 0 : tot[0];
                    bool ok = false;
                    for (const auto& a : c.cons.allowed)
                        if (a.is_rational() && a.rational_value() == v) ok = true;
                    if (!ok) return;
                } else {
                    if (c.cons.complete) {
                        bool ok = false;
                        for (const auto& a : c.cons.allowed) {
                            if (a.is_rational()) continue;
                            auto lifted = poly::lift_conductor(a, c.conductor);
                            if (std::equal(lifted.coeffs.begin(), lifted.coeffs.end(), tot.begin())) ok = true;
                        }
                        if (!ok) return;
                    }
                    // incomplete table: irrational totals pass (flagged upstream)
                }
            }
            FactorMultiset m;
            for (int t = 0; t < nitems; t++)
                if (mults[size_t(t)]) m[items[size_t(t)].label] = mults[size_t(t)];
            out.push_back(std::move(m));
            return;
        }
        if (i == nitems) return;
        // interval pruning on rational classes
        for (size_t ci = 0; ci < ctx.size(); ci++) {
            const auto& c = ctx[ci];
            if (!c.rational) continue;
            long long partial = totals[ci].empty() ? 0 : totals[ci][0];
            const auto& mn = c.min_ratio[size_t(i)];
            const auto& mx = c.max_ratio[size_t(i)];
            bool feasible = false;
            for (long long a : c.allowed_ints) {
                long long deficit = a - partial;
                // need R*min <= deficit <= R*max with R = remaining
                if (deficit * mn.second >= (long long)(remaining)*mn.first &&
                    deficit * mx.second <= (long long)(remaining)*mx.first) {
                    feasible = true;
                    break;
                }
            }
            if (!feasible) return;
        }
        const Item& it = items[size_t(i)];
        int maxm = remaining / it.dim;
        for (int m = maxm; m >= 0; m--) {
            if (i == nitems - 1 && m * it.dim != remaining) continue;
            mults[size_t(i)] = m;
            if (m) {
                for (size_t ci = 0; ci < ctx.size(); ci++) {
                    const auto& v = it.traces[ci];
                    for (size_t j = 0; j < v.coeffs.size(); j++) totals[ci][j] += (long long)(m)*v.coeffs[j];
                }
            }
            rec(i + 1, remaining - m * it.dim);
            if (m) {
                for (size_t ci = 0; ci < ctx.size(); ci++) {
                    const auto& v = it.traces[ci];
                    for (size_t j = 0; j < v.coeffs.size(); j++) totals[ci][j] -= (long long)(m)*v.coeffs[j];
                }
            }
            mults[size_t(i)] = 0;
        }
    };
    rec(0, total_dim);
    std::sort(out.begin(), out.end());
    return out;
}

PressureReport pressure(const FactorMultiset& factors, const repdata::Catalogue& cat) {
    PressureReport r;
    for (const auto& [lab, mult] : factors) {
        const auto& s = cat.need(lab);
        if (lab == "1") r.trivial_count += mult;
        else r.h1_total += s.h1 * mult;
        const auto* d = cat.find(s.dual_label);
        if (!d || d->h1 != s.h1) r.applicable = false;
    }
    // (trivial factors contribute h1 = 0 for perfect groups)
    r.value = r.h1_total - r.trivial_count;
    return r;
}

RuleResult pressure_verdict(const FactorMultiset& factors, const repdata::Catalogue& cat, bool strict_parity) {
    PressureReport p = pressure(factors, cat);
    RuleResult r;
    if (p.trivial_count == 0) {
        r.detail = "no trivial factors";
        return r;
    }
    if (p.value <= 0) {
        r.verdict = Verdict::FixesLine;
        r.rule = "pressure-nonpositive";
        r.detail = "pressure " + std::to_string(p.value) + " with " + std::to_string(p.trivial_count) +
                   " trivial factor(s)";
        return r;
    }
    for (const auto& [lab, mult] : factors) {
        int h1 = cat.need(lab).h1;
        if (h1 > p.value) {
            r.verdict = Verdict::FixesLine;
            r.rule = "h1-exceeds-pressure";
            r.detail = "factor " + lab + " has first cohomology " + std::to_string(h1) + " > pressure " +
                       std::to_string(p.value);
            return r;
        }
    }
    if (strict_parity && p.trivial_count % 2 == 1) {
        // Odd trivial count 2n-1 with a unique cohomology carrier V of
        // two-dimensional H^1: at least 2n copies of V are needed.
        std::string carrier;
        bool single = true;
        for (const auto& [lab, mult] : factors) {
            if (lab == "1") continue;
            if (cat.need(lab).h1 > 0) {
                if (!carrier.empty() && carrier != lab) single = false;
                carrier = lab;
            }
        }
        if (single && !carrier.empty() && cat.need(carrier).h1 == 2) {
            int have = factors.at(carrier);
            if (have < p.trivial_count + 1) {
                r.verdict = Verdict::FixesLine;
                r.rule = "strict-parity";
                r.detail = std::to_string(p.trivial_count) + " trivials need " +
                           std::to_string(p.trivial_count + 1) + " copies of " + carrier + ", have " +
                           std::to_string(have);
                return r;
            }
        }
    }
    r.detail = "pressure " + std::to_string(p.value);
    return r;
}

RuleResult alt5_p2_bound(const FactorMultiset& factors, int min_blocks_of_1, const repdata::Catalogue& cat) {
    if (cat.n != 5 || cat.p != 2)
        throw PreconditionViolated("alt5_p2_bound applies to Alt(5) in characteristic 2 only");
    RuleResult r;
    int trivials = factors.count("1") ? factors.at("1") : 0;
    if (trivials == 0) {
        r.detail = "no trivial factors";
        return r;
    }
    int a = min_blocks_of_1;
    if (a > trivials) throw PreconditionViolated("unit-block count exceeds trivial factor count");
    if ((trivials - a) % 2 != 0) a += 1;  // block count has the same parity as the trivial count
    int b = (trivials - a) / 2;
    int twos = (factors.count("2_1") ? factors.at("2_1") : 0) + (factors.count("2_2") ? factors.at("2_2") : 0);
    int needed = 2 * a + 3 * b;
    if (twos < needed) {
        r.verdict = Verdict::FixesLine;
        r.rule = "dim2-deficit";
        r.detail = "need at least " + std::to_string(needed) + " two-dimensional factors for " +
                   std::to_string(trivials) + " trivials (" + std::to_string(a) + "+2*" + std::to_string(b) +
                   "), have " + std::to_string(twos);
    } else {
        r.detail = "enough two-dimensional factors (" + std::to_string(twos) + " >= " + std::to_string(needed) + ")";
    }
    return r;
}

RuleResult alt8_p2_no20_check(const FactorMultiset& factors, const repdata::Catalogue& cat) {
    if (cat.n != 8 || cat.p != 2)
        throw PreconditionViolated("alt8_p2_no20_check applies to Alt(8) in characteristic 2 only");
    if (factors.count("20") || factors.count("20*"))
        throw PreconditionViolated("alt8_p2_no20_check requires no factors of dimension 20");
    RuleResult r;
    int n = factors.count("1") ? factors.at("1") : 0;
    if (n == 0) {
        r.detail = "no trivial factors";
        return r;
    }
    int c14 = factors.count("14") ? factors.at("14") : 0;
    int c6 = factors.count("6") ? factors.at("6") : 0;
    bool ok = (c14 >= n && c6 >= n + 1) || (c14 >= n + 1 && c6 >= n);
    if (!ok) {
        r.verdict = Verdict::FixesLine;
        r.rule = "no20-pattern";
        r.detail = "with " + std::to_string(n) + " trivials need 14^" + std::to_string(n) + ",6^" +
                   std::to_string(n + 1) + " or 14^" + std::to_string(n + 1) + ",6^" + std::to_string(n) +
                   "; have 14^" + std::to_string(c14) + ",6^" + std::to_string(c6);
    } else {
        r.detail = "pattern present";
    }
    return r;
}

}  // namespace altsieve::sieve
