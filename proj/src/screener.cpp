#include "altsieve/screener.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "altsieve/blocks.hpp"
#include "altsieve/jordan.hpp"

#include "json.hpp"

namespace altsieve::screener {

using blocks::ModuleShape;
using jordan::JordanType;
using repdata::Catalogue;
using repdata::Data;
using repdata::TargetGroupInfo;

std::string kind_name(ModuleKind k) {
    switch (k) {
        case ModuleKind::VMin: return "vmin";
        case ModuleKind::LG: return "lg";
        default: return "both";
    }
}

namespace {

// ---- shape menu for the Jordan sweep ----------------------------------------

struct ShapeEntry {
    std::string key;  // simple label, shape string, or P(S)
    FactorMultiset factors;
    int dim = 0;
    bool has_type = false;
    JordanType type;
    std::string dual_key;
};

struct SweepCtx {
    const Catalogue* cat = nullptr;
    std::string u_class;
    int p = 0;
    std::vector<ShapeEntry> menu;           // trivial-free summands
    std::vector<ShapeEntry> hiders;         // projective covers burying one trivial each
    bool available = false;                 // cyclic blocks with unipotent data
};

std::string shape_key(const Catalogue& cat, const blocks::BrauerTreeLine& tree, const ModuleShape& s) {
    for (const auto& e : tree.edges) {
        if (blocks::pim(tree, e) == s) return "P(" + e + ")";
    }
    return s.to_string();
}

SweepCtx build_sweep_ctx(const Catalogue& cat) {
    SweepCtx ctx;
    ctx.cat = &cat;
    ctx.p = cat.p;
    ctx.u_class = std::to_string(cat.p);  // class id of a single p-cycle
    if (!cat.cyclic_blocks()) return ctx;
    auto dims = cat.dims();
    auto G = perms::alt_group(cat.n);
    if (!G->find_class(ctx.u_class)) return ctx;

    auto type_of = [&](const std::string& key, int dim, bool projective, bool& ok) {
        ok = true;
        if (projective) {
            if (dim % cat.p == 0) return JordanType::free_action(dim, cat.p);
            ok = false;
            return JordanType();
        }
        auto it = cat.unipotent.find({key, ctx.u_class});
        if (it == cat.unipotent.end()) {
            ok = false;
            return JordanType();
        }
        return it->second;
    };

    std::set<std::string> seen;
    auto add_entry = [&](const std::string& key, const FactorMultiset& f, bool projective, const std::string& dual_key) {
        if (seen.count(key)) return;
        seen.insert(key);
        ShapeEntry e;
        e.key = key;
        e.factors = f;
        for (auto& [lab, m] : f) e.dim += dims.at(lab) * m;
        e.type = type_of(key, e.dim, projective, e.has_type);
        e.dual_key = dual_key;
        ctx.menu.push_back(std::move(e));
    };

    // simples: tree edges (cached types) and defect-zero modules (projective)
    for (const auto& s : cat.simples) {
        if (s.label == "1") continue;
        bool edge = cat.tree_containing(s.label) != nullptr;
        add_entry(s.label, {{s.label, 1}}, !edge, s.dual_label);
    }
    for (const auto& tree : cat.trees) {
        // projective covers without trivial factors
        for (const auto& e : tree.edges) {
            ModuleShape P = blocks::pim(tree, e);
            auto f = P.factors();
            if (f.count("1")) continue;
            add_entry("P(" + e + ")", f, true, "P(" + cat.need(e).dual_label + ")");
        }
        // non-projective strings without trivial factors
        for (const auto& s : blocks::indecomposables(tree)) {
            auto f = s.factors();
            if (f.count("1")) continue;
            if (multiset_total(f) == 1) continue;  // simples already added
            add_entry(s.to_string(), f, false, s.dual().to_string());
        }
        if (tree.has_edge("1")) {
            for (const auto& h : blocks::trivial_hiders(tree)) {
                ShapeEntry e;
                e.key = shape_key(cat, tree, h);
                e.factors = h.factors();
                for (auto& [lab, m] : e.factors) e.dim += dims.at(lab) * m;
                bool ok = false;
                e.type = type_of(e.key, e.dim, true, ok);
                e.has_type = ok;
                e.dual_key = e.key;
                ctx.hiders.push_back(std::move(e));
            }
        }
    }
    ctx.available = !ctx.hiders.empty() || !ctx.menu.empty();
    return ctx;
}

struct Realization {
    std::map<std::string, int> counts;  // shape key -> copies
    JordanType type;
    bool typed = true;

    std::string render() const {
        std::string s;
        for (auto& [k, c] : counts) {
            if (c <= 0) continue;
            if (!s.empty()) s += " + ";
            s += k;
            if (c > 1) s += "^" + std::to_string(c);
        }
        return s.empty() ? "0" : s;
    }
};

// Enumerate all decompositions of `factors` into menu shapes (trivials go
// into hiders), deduplicated by Jordan type. self_dual requires the summand
// multiset to be closed under duality.
std::vector<Realization> enumerate_realizations(const SweepCtx& ctx, const FactorMultiset& factors, bool self_dual,
                                                bool& complete) {
    complete = true;
    std::vector<Realization> out;
    if (!ctx.available) {
        complete = false;
        return out;
    }
    int trivials = factors.count("1") ? factors.at("1") : 0;
    std::vector<std::vector<int>> hider_splits;
    if (trivials == 0) {
        hider_splits.push_back(std::vector<int>(ctx.hiders.size(), 0));
    } else {
        if (ctx.hiders.empty()) return out;
        if (ctx.hiders.size() == 1) hider_splits.push_back({trivials});
        else
            for (int a = 0; a <= trivials; a++) hider_splits.push_back({a, trivials - a});
    }
    std::map<std::string, Realization> dedup;
    for (const auto& split : hider_splits) {
        FactorMultiset rest = factors;
        rest.erase("1");
        bool feasible = true;
        JordanType base;
        std::map<std::string, int> base_counts;
        for (size_t h = 0; h < ctx.hiders.size(); h++) {
            if (!split[h]) continue;
            base_counts[ctx.hiders[h].key] += split[h];
            for (int c = 0; c < split[h]; c++) base.merge(ctx.hiders[h].type);
            for (auto& [lab, m] : ctx.hiders[h].factors) {
                if (lab == "1") continue;
                auto it = rest.find(lab);
                if (it == rest.end() || it->second < m * split[h]) {
                    feasible = false;
                    break;
                }
                it->second -= m * split[h];
                if (it->second == 0) rest.erase(it);
            }
            if (!feasible) break;
        }
        if (!feasible) continue;
        // DFS over the menu
        std::function<void(size_t, FactorMultiset, Realization)> rec = [&](size_t i, FactorMultiset rem,
                                                                           Realization r) {
            if (rem.empty()) {
                if (self_dual) {
                    for (auto& [k, c] : r.counts) {
                        std::string dk = k;
                        for (const auto& e : ctx.menu)
                            if (e.key == k) dk = e.dual_key;
                        for (const auto& e : ctx.hiders)
                            if (e.key == k) dk = e.dual_key;
                        int cd = r.counts.count(dk) ? r.counts.at(dk) : 0;
                        if (cd != c) return;
                    }
                }
                std::string key = r.typed ? r.type.to_string() : ("untyped:" + r.render());
                if (!dedup.count(key)) dedup[key] = r;
                return;
            }
            if (i == ctx.menu.size()) return;
            const ShapeEntry& e = ctx.menu[i];
            // max copies of this shape
            int maxc = 1 << 20;
            for (auto& [lab, m] : e.factors) {
                int have = rem.count(lab) ? rem.at(lab) : 0;
                maxc = std::min(maxc, have / m);
            }
            for (int c = maxc; c >= 0; c--) {
                FactorMultiset rem2 = rem;
                bool ok = true;
                for (auto& [lab, m] : e.factors) {
                    auto it = rem2.find(lab);
                    int need = m * c;
                    if (need == 0) continue;
                    if (it == rem2.end() || it->second < need) {
                        ok = false;
                        break;
                    }
                    it->second -= need;
                    if (it->second == 0) rem2.erase(it);
                }
                if (!ok) continue;
                Realization r2 = r;
                if (c) {
                    r2.counts[e.key] += c;
                    if (!e.has_type) r2.typed = false;
                    else
                        for (int t = 0; t < c; t++) r2.type.merge(e.type);
                }
                rec(i + 1, std::move(rem2), std::move(r2));
            }
        };
        Realization start;
        start.counts = base_counts;
        start.type = base;
        rec(0, rest, start);
    }
    for (auto& [k, r] : dedup) out.push_back(r);
    return out;
}

// ---- constraints --------------------------------------------------------------

std::vector<sieve::ClassConstraint> constraints_for(const Catalogue& cat, const TargetGroupInfo& tgt,
                                                    const std::string& kind) {
    std::vector<sieve::ClassConstraint> out;
    auto G = perms::alt_group(cat.n);
    // H-classes to constrain: any catalogued class whose order has shipped
    // target data (shipped tables: 2, 3, 5; user files may extend).
    for (const auto& id : cat.fingerprint_classes) {
        const perms::ClassRep* cr = G->find_class(id);
        if (!cr) continue;
        if (cr->order % cat.p == 0) continue;
        if (!tgt.shipped_orders.count(cr->order)) continue;
        sieve::ClassConstraint c;
        c.h_class_id = id;
        c.order = cr->order;
        for (const auto* pat : tgt.patterns_of_order(cr->order)) {
            const auto& v = (kind == "vmin") ? pat->vmin : pat->lg;
            if (v) c.allowed.push_back(*v);
        }
        if (c.allowed.empty()) continue;
        // dedupe
        std::sort(c.allowed.begin(), c.allowed.end(),
                  [](const poly::Cyclotomic& a, const poly::Cyclotomic& b) { return a.to_string() < b.to_string(); });
        c.allowed.erase(std::unique(c.allowed.begin(), c.allowed.end()), c.allowed.end());
        out.push_back(std::move(c));
    }
    return out;
}

// ---- single-candidate filter chain -------------------------------------------

Verdict filter_candidate(const FactorMultiset& f, const Catalogue& cat, const Data& data, const CaseConfig& cfg,
                         const std::string& kind) {
    Verdict v;
    auto pr = sieve::pressure_verdict(f, cat, cfg.strict_parity);
    if (pr.verdict == sieve::Verdict::FixesLine) {
        v.type = Verdict::FixesLine;
        v.rule = pr.rule;
        v.detail = pr.detail;
        return v;
    }
    int trivials = f.count("1") ? f.at("1") : 0;
    if (trivials > 0 && cat.cyclic_blocks()) {
        auto h1 = cat.h1_map();
        auto cert = blocks::can_hide_trivials(f, cat.trees, cfg.strict_parity, &h1);
        if (cert.verdict == blocks::HidingCertificate::MustFixLine) {
            v.type = Verdict::FixesLine;
            v.rule = "hider-deficit";
            v.detail = cert.detail;
            return v;
        }
    }
    if (cat.n == 5 && cat.p == 2) {
        int a0 = data.min_unit_blocks(cfg.target, cat.p, kind);
        if (a0 > 0 && trivials >= a0) {
            auto rr = sieve::alt5_p2_bound(f, a0, cat);
            if (rr.verdict == sieve::Verdict::FixesLine) {
                v.type = Verdict::FixesLine;
                v.rule = rr.rule;
                v.detail = rr.detail;
                return v;
            }
        }
    }
    if (cat.n == 8 && cat.p == 2 && !f.count("20") && !f.count("20*") && trivials > 0) {
        auto rr = sieve::alt8_p2_no20_check(f, cat);
        if (rr.verdict == sieve::Verdict::FixesLine) {
            v.type = Verdict::FixesLine;
            v.rule = rr.rule;
            v.detail = rr.detail;
            return v;
        }
    }
    v.type = Verdict::Survives;
    v.detail = pr.detail;
    return v;
}

bool kind_self_dual(const std::string& target, const std::string& kind) {
    if (kind == "lg") return true;
    return target == "F4" || target == "E7";  // the E6 minimal module is not self-dual
}

// Outer-automorphism images of a factor multiset (for optional collapsing).
std::vector<FactorMultiset> out_images(const FactorMultiset& f, const Catalogue& cat) {
    // the standard map: X -> X* combined with swapping subscript pairs; for
    // Alt(6) the exceptional automorphisms swap pairs independently
    std::vector<std::map<std::string, std::string>> maps;
    std::map<std::string, std::string> sigma;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& s : cat.simples) {
        std::string img = s.label;
        if (s.dual_label != s.label) img = s.dual_label;
        else {
            auto orbit = util::split(s.out_partner, ';');
            if (orbit.size() == 2) {
                std::string partner = (orbit[0] == s.label) ? orbit[1] : orbit[0];
                bool alt6_fours = (cat.n == 6 && cat.p == 2 && s.dim == 4);
                if (!alt6_fours) img = partner;
                if (std::min(s.label, partner) == s.label) pairs.push_back({s.label, partner});
            }
        }
        sigma[s.label] = img;
    }
    maps.push_back(sigma);
    if (cat.n == 6) {
        // independent pair swaps generate the full action on labels
        maps.clear();
        size_t np = pairs.size();
        for (size_t mask = 0; mask < (size_t(1) << np); mask++) {
            std::map<std::string, std::string> m;
            for (const auto& s : cat.simples) m[s.label] = s.label;
            for (size_t i = 0; i < np; i++)
                if (mask & (size_t(1) << i)) {
                    m[pairs[i].first] = pairs[i].second;
                    m[pairs[i].second] = pairs[i].first;
                }
            maps.push_back(m);
        }
    }
    std::vector<FactorMultiset> images;
    for (const auto& m : maps) {
        FactorMultiset img;
        for (auto& [lab, c] : f) img[m.at(lab)] += c;
        images.push_back(img);
    }
    images.push_back(f);
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    return images;
}

FactorMultiset out_canonical(const FactorMultiset& f, const Catalogue& cat) {
    auto imgs = out_images(f, cat);
    return imgs.front();
}

poly::Cyclotomic multiset_trace(const Catalogue& cat, const FactorMultiset& f, const std::string& class_id) {
    int m = 1;
    for (auto& [lab, mult] : f) m = int(std::lcm(m, cat.trace_of(lab, class_id).m));
    size_t coords = std::max<size_t>(poly::cyclotomic_poly(m).size() - 1, 1);
    poly::Cyclotomic total;
    total.m = m;
    total.coeffs.assign(coords, 0);
    for (auto& [lab, mult] : f) {
        auto t = poly::lift_conductor(cat.trace_of(lab, class_id), m);
        for (size_t j = 0; j < t.coeffs.size(); j++) total.coeffs[j] += (long long)(mult)*t.coeffs[j];
    }
    return total;
}

}  // namespace

std::vector<const PairCandidate*> CaseReport::survivors() const {
    std::vector<const PairCandidate*> out;
    for (const auto& p : pairs)
        if (p.verdict.type == Verdict::Survives) out.push_back(&p);
    return out;
}

CaseReport run_case(const CaseConfig& cfg) {
    CaseReport rep;
    rep.config = cfg;
    const Data& data = Data::get();

    if (cfg.cover == "triple" && cfg.target != "E6")
        throw PreconditionViolated("cover=triple is only meaningful for target E6");
    if (cfg.cover == "double" && cfg.target != "E7")
        throw PreconditionViolated("cover=double is only meaningful for target E7");
    if (cfg.cover != "none") {
        rep.skip_reason = "faithful cover catalogues are not shipped (Brauer tree data for 3.Alt(7) is available "
                          "under data/trees); only cover=none runs are supported";
        return rep;
    }
    if (!data.has_catalogue(cfg.group_n, cfg.prime)) {
        rep.skip_reason = "no catalogue for alt" + std::to_string(cfg.group_n) + " in characteristic " +
                          std::to_string(cfg.prime);
        return rep;
    }
    const Catalogue& cat = data.catalogue(cfg.group_n, cfg.prime);
    TargetGroupInfo tgt = data.target(cfg.target);
    if (!cfg.trace_file.empty()) {
        tgt = Data::merge_trace_file(tgt, cfg.trace_file);
        rep.provenance.push_back("trace constraints extended from " + cfg.trace_file);
    }
    {
        std::string orders;
        for (int o : tgt.shipped_orders) orders += (orders.empty() ? "" : ",") + std::to_string(o);
        rep.provenance.push_back("trace constraints: element orders {" + orders +
                                 "}; integral shipped values (irrational totals unconstrained)");
    }

    ModuleKind kind = cfg.kind;
    if (cfg.target == "E8" && kind != ModuleKind::LG) {
        rep.provenance.push_back("E8 has no separate minimal module; using the adjoint module");
        kind = ModuleKind::LG;
    }

    SweepCtx sweep = build_sweep_ctx(cat);
    const repdata::JordanTable* jt = data.jordan_table(cfg.target, cfg.prime);
    if (sweep.available && !jt)
        rep.provenance.push_back("no unipotent class table for " + cfg.target + " in characteristic " +
                                 std::to_string(cfg.prime) + "; Jordan filtering skipped");
    if (jt && jt->completeness == "partial")
        rep.provenance.push_back("unipotent class data for " + cfg.target +
                                 " consists of individually cited classes (partial table)");
    if (jt && jt->completeness == "nongeneric")
        rep.provenance.push_back("unipotent class table lists non-generic classes only; generic classes are "
                                 "handled by the genericity reduction");

    auto enumerate_kind = [&](const std::string& k, const std::vector<sieve::ClassConstraint>& cons) {
        int dim = (k == "vmin") ? tgt.vmin_dim(cfg.prime) : tgt.lg_dim(cfg.prime);
        return sieve::enumerate_factor_sets(cat, dim, cons);
    };

    auto sweep_single = [&](const FactorMultiset& f, const std::string& k, Candidate& cand) {
        if (!sweep.available) return;  // nothing to do
        bool complete = true;
        auto reals = enumerate_realizations(sweep, f, kind_self_dual(cfg.target, k), complete);
        if (reals.empty()) {
            cand.verdict.type = Verdict::FixesLine;
            cand.verdict.rule = "no-line-free-realization";
            cand.verdict.detail = "no direct sum of block indecomposables covers the trivial factors";
            return;
        }
        if (!jt) {
            for (auto& r : reals) {
                cand.structures.push_back(r.render());
                if (r.typed) cand.jordan_types.push_back(r.type.to_string());
            }
            cand.verdict.caveats.push_back("no class table; realizations unchecked");
            return;
        }
        bool any_ok = false, any_unknown = false;
        std::vector<std::string> tried;
        for (auto& r : reals) {
            if (!r.typed) {
                any_unknown = true;
                cand.structures.push_back(r.render() + " (type unknown)");
                continue;
            }
            auto classes = jt->lookup(k, r.type);
            tried.push_back(r.type.to_string());
            if (!classes.empty()) {
                any_ok = true;
                cand.structures.push_back(r.render());
                cand.jordan_types.push_back(r.type.to_string() + " [" + classes[0] + "]");
            }
        }
        if (!any_ok && !any_unknown) {
            cand.verdict.type = Verdict::EliminatedByJordan;
            cand.verdict.rule = "jordan-unmatched";
            std::string ts;
            for (auto& t : tried) ts += (ts.empty() ? "" : "; ") + t;
            cand.verdict.detail = "no unipotent class acts with any attainable type: " + ts;
            if (jt->completeness != "order") cand.verdict.caveats.push_back("class table: " + jt->completeness);
        } else if (any_unknown) {
            cand.verdict.caveats.push_back("some realizations lack cached types");
        }
    };

    if (kind != ModuleKind::Both) {
        std::string k = kind_name(kind);
        auto cons = constraints_for(cat, tgt, k);
        auto sets = enumerate_kind(k, cons);
        std::set<std::string> seen;
        for (auto& f : sets) {
            FactorMultiset use = f;
            if (cfg.collapse_out_orbits) {
                use = out_canonical(f, cat);
                if (!seen.insert(multiset_to_string(use)).second) continue;
            }
            Candidate cand;
            cand.factors = use;
            cand.verdict = filter_candidate(use, cat, data, cfg, k);
            if (cand.verdict.type == Verdict::Survives) sweep_single(use, k, cand);
            auto& list = (k == "vmin") ? rep.vmin_candidates : rep.lg_candidates;
            list.push_back(std::move(cand));
        }
        rep.ran = true;
        return rep;
    }

    // both: couple the two modules through the per-class trace patterns
    auto consV = constraints_for(cat, tgt, "vmin");
    auto setsV = enumerate_kind("vmin", consV);
    auto G = perms::alt_group(cat.n);

    // vmin-side single verdicts
    std::map<std::string, Verdict> v_verdicts;
    for (auto& fv : setsV) {
        Candidate cv;
        cv.factors = fv;
        cv.verdict = filter_candidate(fv, cat, data, cfg, "vmin");
        v_verdicts[multiset_to_string(fv)] = cv.verdict;
        rep.vmin_candidates.push_back(std::move(cv));
    }

    std::map<std::string, std::vector<FactorMultiset>> lg_cache;
    std::map<std::string, Verdict> l_verdicts;

    for (auto& fv : setsV) {
        // per-class matched patterns determine the allowed adjoint traces
        std::vector<sieve::ClassConstraint> consL;
        bool coupled_ok = true;
        for (const auto& c : consV) {
            poly::Cyclotomic total = multiset_trace(cat, fv, c.h_class_id);
            sieve::ClassConstraint cl;
            cl.h_class_id = c.h_class_id;
            cl.order = c.order;
            if (total.is_rational()) {
                long long v = total.rational_value();
                for (const auto* pat : tgt.patterns_of_order(c.order)) {
                    if (!pat->vmin || !pat->lg) continue;
                    if (pat->vmin->is_rational() && pat->vmin->rational_value() == v) cl.allowed.push_back(*pat->lg);
                }
                if (cl.allowed.empty()) coupled_ok = false;  // no class matches the vmin trace
            } else {
                // irrational vmin trace: shipped integral data gives no coupling
                for (const auto* pat : tgt.patterns_of_order(c.order))
                    if (pat->lg) cl.allowed.push_back(*pat->lg);
            }
            consL.push_back(std::move(cl));
        }
        if (!coupled_ok) continue;
        std::string sig;
        for (auto& c : consL) {
            sig += c.h_class_id + "{";
            for (auto& a : c.allowed) sig += a.to_string() + ";";
            sig += "}";
        }
        if (!lg_cache.count(sig)) lg_cache[sig] = enumerate_kind("lg", consL);
        for (auto& fl : lg_cache[sig]) {
            PairCandidate pc;
            pc.vmin = fv;
            pc.lg = fl;
            const Verdict& vv = v_verdicts.at(multiset_to_string(fv));
            Verdict lv;
            auto key = multiset_to_string(fl);
            if (l_verdicts.count(key)) lv = l_verdicts.at(key);
            else {
                lv = filter_candidate(fl, cat, data, cfg, "lg");
                l_verdicts[key] = lv;
            }
            if (vv.type != Verdict::Survives) {
                pc.verdict = vv;
                pc.verdict.detail = "minimal module: " + pc.verdict.detail;
            } else if (lv.type != Verdict::Survives) {
                pc.verdict = lv;
                pc.verdict.detail = "adjoint module: " + pc.verdict.detail;
            } else if (sweep.available && jt) {
                bool cv = true, cl2 = true;
                auto realsV = enumerate_realizations(sweep, fv, kind_self_dual(cfg.target, "vmin"), cv);
                auto realsL = enumerate_realizations(sweep, fl, true, cl2);
                if (realsV.empty() || realsL.empty()) {
                    pc.verdict.type = Verdict::FixesLine;
                    pc.verdict.rule = "no-line-free-realization";
                    pc.verdict.detail = "no direct sum of block indecomposables covers the trivial factors";
                } else {
                    bool any = false, unknown = false;
                    std::set<std::string> classes_seen;
                    for (auto& rv : realsV) {
                        for (auto& rl : realsL) {
                            if (!rv.typed || !rl.typed) {
                                unknown = true;
                                continue;
                            }
                            auto cls_v = jt->lookup("vmin", rv.type);
                            auto cls_l = jt->lookup("lg", rl.type);
                            std::vector<std::string> common;
                            for (auto& c : cls_v)
                                if (std::find(cls_l.begin(), cls_l.end(), c) != cls_l.end()) common.push_back(c);
                            if (!common.empty()) {
                                any = true;
                                pc.vmin_structures.push_back(rv.render());
                                pc.lg_structures.push_back(rl.render());
                                for (auto& c : common) classes_seen.insert(c);
                            }
                        }
                    }
                    if (any) {
                        pc.verdict.type = Verdict::Survives;
                        pc.classes.assign(classes_seen.begin(), classes_seen.end());
                        std::sort(pc.vmin_structures.begin(), pc.vmin_structures.end());
                        pc.vmin_structures.erase(std::unique(pc.vmin_structures.begin(), pc.vmin_structures.end()),
                                                 pc.vmin_structures.end());
                        std::sort(pc.lg_structures.begin(), pc.lg_structures.end());
                        pc.lg_structures.erase(std::unique(pc.lg_structures.begin(), pc.lg_structures.end()),
                                               pc.lg_structures.end());
                    } else if (unknown) {
                        pc.verdict.type = Verdict::Survives;
                        pc.verdict.caveats.push_back("some realizations lack cached types");
                    } else {
                        pc.verdict.type = Verdict::EliminatedByJordan;
                        pc.verdict.rule = "jordan-unmatched";
                        pc.verdict.detail = "no unipotent class is consistent with both modules";
                        if (jt->completeness != "order")
                            pc.verdict.caveats.push_back("class table: " + jt->completeness);
                    }
                }
            } else {
                pc.verdict.type = Verdict::Survives;
                if (!jt) pc.verdict.caveats.push_back("no class table for this characteristic");
            }
            rep.pairs.push_back(std::move(pc));
        }
    }

    // lg-side single candidates for the report
    for (auto& [key, lv] : l_verdicts) {
        Candidate cl;
        // reconstruct is awkward; store the rendered key in detail instead
        cl.verdict = lv;
        cl.verdict.detail = key + ": " + lv.detail;
        rep.lg_candidates.push_back(std::move(cl));
    }
    rep.ran = true;
    return rep;
}

// ---- rendering ---------------------------------------------------------------

namespace {

const char* verdict_name(Verdict::Type t) {
    switch (t) {
        case Verdict::FixesLine: return "FixesLine";
        case Verdict::EliminatedByJordan: return "EliminatedByJordan";
        default: return "Survives";
    }
}

void render_candidate_text(std::ostringstream& out, const Candidate& c) {
    out << "  " << multiset_to_string(c.factors) << "  ->  " << verdict_name(c.verdict.type);
    if (!c.verdict.rule.empty()) out << " [" << c.verdict.rule << "]";
    if (!c.verdict.detail.empty()) out << "  (" << c.verdict.detail << ")";
    out << "\n";
    for (const auto& s : c.structures) out << "      structure: " << s << "\n";
    for (const auto& cv : c.verdict.caveats) out << "      caveat: " << cv << "\n";
}

}  // namespace

std::string render_text(const CaseReport& r) {
    std::ostringstream out;
    out << "case: alt" << r.config.group_n << " cover=" << r.config.cover << " target=" << r.config.target
        << " p=" << r.config.prime << " module=" << kind_name(r.config.kind) << "\n";
    if (!r.skip_reason.empty()) {
        out << "not catalogued: " << r.skip_reason << "\n";
        return out.str();
    }
    for (const auto& p : r.provenance) out << "note: " << p << "\n";
    if (r.config.kind == ModuleKind::Both) {
        out << "pairs (vmin, lg): " << r.pairs.size() << "\n";
        for (const auto& p : r.pairs) {
            out << "  [" << multiset_to_string(p.vmin) << " | " << multiset_to_string(p.lg) << "]  ->  "
                << verdict_name(p.verdict.type);
            if (!p.verdict.rule.empty()) out << " [" << p.verdict.rule << "]";
            if (!p.verdict.detail.empty()) out << "  (" << p.verdict.detail << ")";
            out << "\n";
            for (const auto& s : p.vmin_structures) out << "      vmin: " << s << "\n";
            for (const auto& s : p.lg_structures) out << "      lg:   " << s << "\n";
            if (!p.classes.empty()) {
                out << "      classes:";
                for (const auto& c : p.classes) out << " " << c;
                out << "\n";
            }
            for (const auto& cv : p.verdict.caveats) out << "      caveat: " << cv << "\n";
        }
    }
    if (!r.vmin_candidates.empty()) {
        out << "minimal module candidates: " << r.vmin_candidates.size() << "\n";
        for (const auto& c : r.vmin_candidates) render_candidate_text(out, c);
    }
    if (!r.lg_candidates.empty()) {
        out << "adjoint module candidates: " << r.lg_candidates.size() << "\n";
        for (const auto& c : r.lg_candidates) render_candidate_text(out, c);
    }
    return out.str();
}

std::string render_json(const CaseReport& r) {
    nlohmann::json j;
    j["schema"] = "report-v1";
    j["config"] = {{"group", "alt" + std::to_string(r.config.group_n)},
                   {"cover", r.config.cover},
                   {"target", r.config.target},
                   {"prime", r.config.prime},
                   {"module", kind_name(r.config.kind)},
                   {"strict_parity", r.config.strict_parity},
                   {"collapse_out_orbits", r.config.collapse_out_orbits},
                   {"seed", r.config.seed}};
    j["ran"] = r.ran;
    if (!r.skip_reason.empty()) j["not_catalogued"] = r.skip_reason;
    j["notes"] = r.provenance;
    auto cand_json = [](const Candidate& c) {
        nlohmann::json cj;
        cj["factors"] = multiset_to_string(c.factors);
        cj["verdict"] = verdict_name(c.verdict.type);
        if (!c.verdict.rule.empty()) cj["rule"] = c.verdict.rule;
        if (!c.verdict.detail.empty()) cj["detail"] = c.verdict.detail;
        if (!c.verdict.caveats.empty()) cj["caveats"] = c.verdict.caveats;
        if (!c.structures.empty()) cj["structures"] = c.structures;
        if (!c.jordan_types.empty()) cj["jordan_types"] = c.jordan_types;
        return cj;
    };
    j["vmin_candidates"] = nlohmann::json::array();
    for (const auto& c : r.vmin_candidates) j["vmin_candidates"].push_back(cand_json(c));
    j["lg_candidates"] = nlohmann::json::array();
    for (const auto& c : r.lg_candidates) j["lg_candidates"].push_back(cand_json(c));
    j["pairs"] = nlohmann::json::array();
    for (const auto& p : r.pairs) {
        nlohmann::json pj;
        pj["vmin"] = multiset_to_string(p.vmin);
        pj["lg"] = multiset_to_string(p.lg);
        pj["verdict"] = verdict_name(p.verdict.type);
        if (!p.verdict.rule.empty()) pj["rule"] = p.verdict.rule;
        if (!p.verdict.detail.empty()) pj["detail"] = p.verdict.detail;
        if (!p.verdict.caveats.empty()) pj["caveats"] = p.verdict.caveats;
        if (!p.vmin_structures.empty()) pj["vmin_structures"] = p.vmin_structures;
        if (!p.lg_structures.empty()) pj["lg_structures"] = p.lg_structures;
        if (!p.classes.empty()) pj["classes"] = p.classes;
        j["pairs"].push_back(pj);
    }
    return j.dump(2);
}

}  // namespace altsieve::screener
