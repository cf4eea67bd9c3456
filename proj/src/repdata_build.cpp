#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <random>
#include <sstream>

#include "altsieve/repdata.hpp"

// Catalogue derivation: constructs every catalogued simple module from
// permutation modules and functors, fixes the labelling conventions, and
// freezes fingerprints, unipotent actions and the realized modules under
// data/. Deterministic (fixed seeds), so the audit can re-run it.

namespace altsieve::repdata {

namespace fs = std::filesystem;
using ff::Field;
using gmod::GModule;

int catalogue_field_degree(int n, int p);  // defined in repdata.cpp

namespace {

std::string sanitize_label(const std::string& label) {
    std::string s;
    for (char c : label) {
        if (c == '*') s += 's';
        else if (c == '/') s += '_';
        else if (c == ',') s += '-';
        else if (c == '(' || c == ')') s += '.';
        else s += c;
    }
    return s;
}

std::vector<SimpleInfo> expected_simples(int n, int p) {
    // Read the transcribed table directly (fingerprints may not exist yet).
    std::string path = Data::dir() + "/simples/" + std::to_string(n) + "_" + std::to_string(p) + ".csv";
    std::vector<SimpleInfo> out;
    for (const auto& [ln, row] : util::read_csv(path)) {
        if (row.size() < 6) throw ParseError("simples row needs 6+ fields", ln);
        SimpleInfo s;
        s.label = row[0];
        s.dim = int(util::parse_int(row[1], ln));
        s.h1 = int(util::parse_int(row[2], ln));
        s.dual_label = row[3];
        s.block_id = row[4];
        s.out_partner = row[5];
        out.push_back(s);
    }
    return out;
}

struct Builder {
    int n = 0, p = 0;
    const Field* F = nullptr;
    perms::GroupPtr G;
    std::vector<std::pair<GModule, mtx::PeakWitness>> found;
    std::vector<std::string> log;
    uint64_t seed = 0x5eedbea700ull;

    void note(const std::string& s) { log.push_back(s); }

    int absorb(GModule M, const std::string& what) {
        auto r = mtx::chop(M, seed++);
        int added = 0;
        std::string desc;
        for (auto& fac : r.factors) {
            GModule S = fac.module;
            mtx::PeakWitness w = fac.witness;
            if (S.F->k > F->k)
                throw Error("factor needs field GF(" + S.F->name() + ") beyond the catalogue field (alt" +
                            std::to_string(n) + " mod " + std::to_string(p) + ")");
            if (S.F->k < F->k) {
                if (F->k % S.F->k != 0) throw Error("factor field does not embed in the catalogue field");
                S = gmod::extend_scalars(S, *F);
                gmod::Submodule dummy;
                if (!mtx::certify_irreducible(S, seed++, w, dummy))
                    throw Error("factor became reducible after scalar extension");
            }
            if (!desc.empty()) desc += ",";
            desc += std::to_string(S.dim) + "^" + std::to_string(fac.multiplicity);
            bool known = false;
            for (auto& [T, tw] : found)
                if (T.dim == S.dim && mtx::is_isomorphic(T, tw, S)) {
                    known = true;
                    break;
                }
            if (!known) {
                found.push_back({S, w});
                added++;
            }
        }
        note(what + " chops to {" + desc + "}");
        return added;
    }

    std::vector<int> of_dim(int d) const {
        std::vector<int> idx;
        for (size_t i = 0; i < found.size(); i++)
            if (found[i].first.dim == d) idx.push_back(int(i));
        return idx;
    }

    const GModule& one_of_dim(int d, int which = 0) const {
        auto idx = of_dim(d);
        if (int(idx.size()) <= which)
            throw Error("needed a module of dim " + std::to_string(d) + " not yet constructed (alt" +
                        std::to_string(n) + " mod " + std::to_string(p) + ")");
        return found[size_t(idx[size_t(which)])].first;
    }

    bool complete(const std::vector<SimpleInfo>& want) const {
        std::map<int, int> need, have;
        for (const auto& s : want) need[s.dim]++;
        for (const auto& [m, w] : found) have[m.dim]++;
        for (auto& [d, c] : need)
            if (have[d] < c) return false;
        return true;
    }
};

using MenuItem = std::pair<std::string, std::function<GModule(Builder&)>>;

std::vector<MenuItem> build_menu(int n, int p) {
    auto perm = [](Builder& b) { return gmod::perm_module(b.n, *b.F); };
    auto subsets = [](int k) {
        return [k](Builder& b) { return gmod::perm_module_on_subsets(b.n, k, *b.F); };
    };
    auto flags = [](int k) {
        return [k](Builder& b) { return gmod::perm_module_on_flags(b.n, k, *b.F); };
    };
    auto L2 = [](int d, int which = 0) {
        return [d, which](Builder& b) { return gmod::ext_square(b.one_of_dim(d, which)); };
    };
    auto T = [](int d1, int w1, int d2, int w2) {
        return [=](Builder& b) { return gmod::tensor(b.one_of_dim(d1, w1), b.one_of_dim(d2, w2)); };
    };
    auto Tdual = [](int d1, int w1, int d2, int w2) {
        return [=](Builder& b) { return gmod::tensor(b.one_of_dim(d1, w1), gmod::dual(b.one_of_dim(d2, w2))); };
    };

    std::vector<MenuItem> m;
    auto add = [&](const std::string& name, std::function<GModule(Builder&)> f) { m.push_back({name, f}); };
    int key = n * 10 + p;
    switch (key) {
        case 52:  // alt5 mod 2
            add("perm5", perm);
            add("L2(4)", L2(4));
            break;
        case 53:
            add("perm5", perm);
            add("L2(4)", L2(4));
            break;
        case 55:
            add("perm5", perm);
            add("pairs10", subsets(2));
            break;
        case 62:
            add("perm6", perm);
            add("L2(4)", L2(4));
            add("4x4'", T(4, 0, 4, 1));
            break;
        case 63:
            add("perm6", perm);
            add("L2(4)", L2(4));
            add("pairs15", subsets(2));
            add("4x4", T(4, 0, 4, 0));
            break;
        case 65:
            add("perm6", perm);
            add("pairs15", subsets(2));
            add("3sets20", subsets(3));
            add("L2(5)", L2(5));
            add("5x5", T(5, 0, 5, 0));
            break;
        case 72:
            add("perm7", perm);
            add("pairs21", subsets(2));
            add("L2(6)", L2(6));
            add("3sets35", subsets(3));
            add("flags21", flags(2));
            add("6x14", T(6, 0, 14, 0));
            add("4x14", T(4, 0, 14, 0));
            break;
        case 73:
            add("perm7", perm);
            add("pairs21", subsets(2));
            add("L2(6)", L2(6));
            add("6x13", T(6, 0, 13, 0));
            add("L2(13)", L2(13));
            add("13x13", T(13, 0, 13, 0));
            break;
        case 75:
            add("perm7", perm);
            add("pairs21", subsets(2));
            add("3sets35", subsets(3));
            add("L2(6)", L2(6));
            add("6x13", T(6, 0, 13, 0));
            add("6x8", T(6, 0, 8, 0));
            add("8x13", T(8, 0, 13, 0));
            add("L2(13)", L2(13));
            add("6x15", T(6, 0, 15, 0));
            break;
        case 77:
            add("perm7", perm);
            add("L2(5)", L2(5));
            add("pairs21", subsets(2));
            add("3sets35", subsets(3));
            add("5x5", T(5, 0, 5, 0));
            add("5x10", T(5, 0, 10, 0));
            add("5x14", T(5, 0, 14, 0));
            add("5x14'", T(5, 0, 14, 1));
            add("L2(10)", L2(10));
            break;
        case 82:
            add("perm8", perm);
            add("flags168", flags(2));
            add("4xdual4", Tdual(4, 0, 4, 0));
            add("4x6", T(4, 0, 6, 0));
            add("4x20", T(4, 0, 20, 0));
            add("4x20'", T(4, 0, 20, 1));
            add("6x14", T(6, 0, 14, 0));
            add("6x20", T(6, 0, 20, 0));
            break;
        case 83:
            add("perm8", perm);
            add("pairs28", subsets(2));
            add("L2(7)", L2(7));
            add("3sets56", subsets(3));
            add("7x7", T(7, 0, 7, 0));
            add("7x13", T(7, 0, 13, 0));
            add("L2(13)", L2(13));
            add("7x21", T(7, 0, 21, 0));
            add("7x28", T(7, 0, 28, 0));
            add("13x13", T(13, 0, 13, 0));
            break;
        case 85:
            add("perm8", perm);
            add("pairs28", subsets(2));
            add("3sets56", subsets(3));
            add("4sets70", subsets(4));
            add("L2(7)", L2(7));
            add("7x20", T(7, 0, 20, 0));
            add("7x13", T(7, 0, 13, 0));
            add("L2(13)", L2(13));
            add("7x21", T(7, 0, 21, 0));
            add("7x21'", T(7, 0, 21, 1));
            add("13x20", T(13, 0, 20, 0));
            add("7x43", T(7, 0, 43, 0));
            add("L2(20)", L2(20));
            break;
        case 87:
            add("perm8", perm);
            add("pairs28", subsets(2));
            add("L2(7)", L2(7));
            add("3sets56", subsets(3));
            add("4sets70", subsets(4));
            add("7x19", T(7, 0, 19, 0));
            add("7x14", T(7, 0, 14, 0));
            add("7x21", T(7, 0, 21, 0));
            add("L2(14)", L2(14));
            add("7x28", T(7, 0, 28, 0));
            add("L2(19)", L2(19));
            add("14x19", T(14, 0, 19, 0));
            break;
        case 92:
            add("perm9", perm);
            add("pairs36", subsets(2));
            add("3sets84", subsets(3));
            add("4sets126", subsets(4));
            add("flags252", flags(2));
            add("8x26", T(8, 0, 26, 0));
            add("flags504", flags(3));
            add("8'x8", T(8, 1, 8, 0));
            add("8''x8", T(8, 2, 8, 0));
            break;
        case 93:
            add("perm9", perm);
            add("pairs36", subsets(2));
            add("L2(7)", L2(7));
            add("3sets84", subsets(3));
            add("4sets126", subsets(4));
            add("7x27", T(7, 0, 27, 0));
            add("7x41", T(7, 0, 41, 0));
            add("7x35", T(7, 0, 35, 0));
            add("flags252", flags(2));
            add("7x21", T(7, 0, 21, 0));
            break;
        case 102:
            add("perm10", perm);
            add("pairs45", subsets(2));
            add("3sets120", subsets(3));
            add("4sets210", subsets(4));
            break;
    }
    if (m.empty()) throw NotCatalogued("no construction menu for alt" + std::to_string(n) + " mod " + std::to_string(p));
    return m;
}

// ---- labelling --------------------------------------------------------------

// The perm-module heart: the unique largest factor of the point permutation
// module (used as the labelling anchor for several catalogues).
int perm_heart_index(Builder& b) {
    GModule pm = gmod::perm_module(b.n, *b.F);
    auto r = mtx::chop(pm, 12345);
    int best_dim = 0;
    const mtx::ChopFactor* best = nullptr;
    for (const auto& f : r.factors)
        if (f.module.dim > best_dim) {
            best_dim = f.module.dim;
            best = &f;
        }
    GModule H = best->module;
    mtx::PeakWitness w = best->witness;
    if (H.F->k < b.F->k) {
        H = gmod::extend_scalars(H, *b.F);
        gmod::Submodule dummy;
        mtx::certify_irreducible(H, 999, w, dummy);
    }
    for (size_t i = 0; i < b.found.size(); i++)
        if (b.found[i].first.dim == H.dim && mtx::is_isomorphic(b.found[i].first, b.found[i].second, H))
            return int(i);
    throw Error("perm-module heart not among constructed simples");
}

struct Labeler {
    Builder& b;
    std::vector<SimpleInfo> want;
    std::map<std::string, int> assignment;  // label -> index into b.found
    std::map<int, mtx::Fingerprint> prints;

    const mtx::Fingerprint& print_of(int idx) {
        auto it = prints.find(idx);
        if (it != prints.end()) return it->second;
        std::vector<perms::ClassRep> classes;
        auto ids_path = fingerprint_class_ids_for(b.n, b.p);
        for (const auto& id : ids_path) {
            const perms::ClassRep* cr = b.G->find_class(id);
            if (!cr) throw Error("class " + id + " missing");
            classes.push_back(*cr);
        }
        return prints.emplace(idx, mtx::fingerprint(b.found[size_t(idx)].first, classes)).first->second;
    }

    static std::vector<std::string> fingerprint_class_ids_for(int n, int p);

    bool is_dual_pair(int i, int j) {
        GModule d = gmod::dual(b.found[size_t(i)].first);
        return mtx::is_isomorphic(b.found[size_t(j)].first, b.found[size_t(j)].second, d);
    }
    bool self_dual(int i) { return is_dual_pair(i, i); }

    void assign(const std::string& label, int idx) {
        if (assignment.count(label)) throw Error("label " + label + " assigned twice");
        for (auto& [l, i] : assignment)
            if (i == idx) throw Error("module assigned twice: " + l + " and " + label);
        assignment[label] = idx;
    }

    void run();
};

std::vector<std::string> Labeler::fingerprint_class_ids_for(int n, int p) {
    // mirrors the table in repdata.cpp via the loaded catalogue
    return Data::get().catalogue(n, p).fingerprint_classes;
}

void Labeler::run() {
    std::map<int, std::vector<std::string>> labels_by_dim;
    for (const auto& s : want) labels_by_dim[s.dim].push_back(s.label);

    // anchors first
    int key = b.n * 100 + b.p;
    if (key == 602) assign("4_1", perm_heart_index(b));
    if (key == 902) assign("8_3", perm_heart_index(b));
    if (key == 605) assign("5_1", perm_heart_index(b));
    if (key == 805) {
        // 21_2 is the 21 occurring in P(7) = 7/21_2/7: take the {7,21a,21b}-radical
        // of the projective 4-sets module and look at its chop.
        GModule Q = gmod::perm_module_on_subsets(8, 4, *b.F);
        std::vector<const GModule*> Ilist;
        auto sevens = b.of_dim(7);
        auto t21 = b.of_dim(21);
        if (t21.size() != 2) throw Error("expected two 21-dim simples for alt8 mod 5");
        std::vector<GModule> keep;
        for (int i : sevens) keep.push_back(b.found[size_t(i)].first);
        for (int i : t21) keep.push_back(b.found[size_t(i)].first);
        for (const auto& mref : keep) Ilist.push_back(&mref);
        gmod::Submodule W = gmod::radical_wrt(Q, Ilist);
        if (W.dim() != 35) throw Error("P(7) extraction gave dim " + std::to_string(W.dim()) + ", expected 35");
        GModule P7 = gmod::sub_action(Q, W);
        auto r = mtx::chop(P7, 777);
        for (const auto& f : r.factors) {
            if (f.module.dim != 21) continue;
            for (int i : t21)
                if (mtx::is_isomorphic(b.found[size_t(i)].first, b.found[size_t(i)].second, f.module))
                    assign("21_2", i);
        }
        if (!assignment.count("21_2")) throw Error("could not anchor 21_2 inside P(7)");
    }

    for (auto& [dim, labels] : labels_by_dim) {
        std::vector<std::string> todo;
        for (const auto& l : labels)
            if (!assignment.count(l)) todo.push_back(l);
        if (todo.empty()) continue;
        std::vector<int> cands;
        for (int i : b.of_dim(dim)) {
            bool taken = false;
            for (auto& [l, j] : assignment)
                if (j == i) taken = true;
            if (!taken) cands.push_back(i);
        }
        if (cands.size() != todo.size())
            throw Error("label/candidate count mismatch at dim " + std::to_string(dim) + " (alt" +
                        std::to_string(b.n) + " mod " + std::to_string(b.p) + "): " + std::to_string(todo.size()) +
                        " labels, " + std::to_string(cands.size()) + " candidates");
        if (todo.size() == 1) {
            assign(todo[0], cands[0]);
            continue;
        }
        // split expected labels into self-dual ones and dual pairs using the table
        auto dual_of = [&](const std::string& l) {
            for (const auto& s : want)
                if (s.label == l) return s.dual_label;
            throw Error("unknown label " + l);
        };
        std::vector<std::string> self_labels;
        std::vector<std::pair<std::string, std::string>> pair_labels;
        std::set<std::string> used;
        for (const auto& l : todo) {
            if (used.count(l)) continue;
            std::string d = dual_of(l);
            if (d == l) {
                self_labels.push_back(l);
                used.insert(l);
            } else {
                pair_labels.push_back({std::min(l, d), std::max(l, d)});
                used.insert(l);
                used.insert(d);
            }
        }
        std::vector<int> self_cands, pair_cands;
        for (int c : cands) (self_dual(c) ? self_cands : pair_cands).push_back(c);
        if (self_cands.size() != self_labels.size())
            throw Error("self-duality mismatch at dim " + std::to_string(dim));
        // self-dual candidates: sort by fingerprint, labels sorted ascending
        std::sort(self_labels.begin(), self_labels.end());
        std::sort(self_cands.begin(), self_cands.end(), [&](int a, int bb) {
            return print_of(a).to_string() < print_of(bb).to_string();
        });
        for (size_t i = 0; i < self_labels.size(); i++) assign(self_labels[i], self_cands[i]);
        // dual pairs: match candidates into pairs, unstarred label = smaller fingerprint
        std::vector<std::pair<int, int>> cand_pairs;
        std::set<int> seen;
        for (int c : pair_cands) {
            if (seen.count(c)) continue;
            for (int d : pair_cands) {
                if (d == c || seen.count(d)) continue;
                if (is_dual_pair(c, d)) {
                    cand_pairs.push_back({c, d});
                    seen.insert(c);
                    seen.insert(d);
                    break;
                }
            }
        }
        if (cand_pairs.size() != pair_labels.size())
            throw Error("dual-pair mismatch at dim " + std::to_string(dim));
        for (size_t i = 0; i < pair_labels.size(); i++) {
            auto [l1, l2] = pair_labels[i];  // l1 < l2, so l1 is the unstarred/lower label
            auto [c1, c2] = cand_pairs[i];
            if (print_of(c2).to_string() < print_of(c1).to_string()) std::swap(c1, c2);
            assign(l1, c1);
            assign(l2, c2);
        }
    }
    if (assignment.size() != want.size()) throw Error("labelling incomplete");
}

// ---- shape realization -------------------------------------------------------

// Small p'-subgroups used to host projective permutation modules. Orders are
// checked at runtime; entries whose order is divisible by the characteristic
// are skipped.
std::vector<std::vector<std::string>> subgroup_library(int n) {
    switch (n) {
        case 5:
            return {{"(1,2)(3,4)", "(1,3)(2,4)"},                      // V4
                    {"(1,2,3)"},                                       // C3
                    {"(1,2,3)", "(2,3,4)"},                            // A4
                    {"(1,2,3)", "(1,2)(4,5)"},                         // S3
                    {"(1,2,3,4,5)", "(2,5)(3,4)"}};                    // D10
        case 6:
            return {{"(1,2,3,4)(5,6)", "(1,3)(5,6)"},                  // D8
                    {"(1,2,3)", "(4,5,6)"},                            // 3^2
                    {"(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)(?)"},      // placeholder, skipped
                    {"(1,2,3,4)(5,6)", "(1,2)(5,6)"},                  // S4 (pair stabilizer type)
                    {"(1,2,3)", "(2,3,4)"},                            // A4
                    {"(1,2,3,4,5)", "(2,5)(3,4)"}};                    // D10
        case 7:
            return {{"(1,2,3,4,5,6,7)", "(1,2,4)(3,6,5)"},             // F21
                    {"(1,2,3,4)(5,6)", "(1,2)(5,6)", "(1,2)(6,7)"},    // (S4 x S3) meet A7
                    {"(1,2,3,4,5)", "(1,2)(6,7)", "(4,5)(6,7)"},       // (S5 x S2) meet A7
                    {"(1,2,3,4,5,6,7)", "(2,3)(4,7)", "(2,4)(3,6)"},   // PSL(3,2) candidate
                    {"(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)(?)"},      // skipped
                    {"(1,2,3,4)(5,6)", "(1,3)(5,6)", "(5,6,7)(?)"}};   // skipped
        case 8:
            return {{"(1,2)(3,4)(5,6)(7,8)", "(1,3)(2,4)(5,7)(6,8)", "(1,5)(2,6)(3,7)(4,8)", "(2,3,5)(4,7,6)",
                     "(2,5,3)(6,7,8)(?)"},                             // skipped placeholder
                    {"(1,2)(3,4)(5,6)(7,8)", "(1,3)(2,4)(5,7)(6,8)", "(1,5)(2,6)(3,7)(4,8)", "(2,3,5)(4,7,6)"},
                                                                        // AGL(3,2) candidate
                    {"(1,2,3,4,5,6)(7,8)", "(1,2)(7,8)"},              // (S6 x S2) meet A8
                    {"(1,2,3,4)(5,6,7,8)", "(1,2,3,4)(5,8,7,6)", "(1,3)(5,7)", "(1,5)(2,6)(3,7)(4,8)"},  // Sylow 2
                    {"(1,2,3,4)(5,6)", "(1,2)(5,6)", "(1,2)(7,8)"},    // (S4 x S4-part)
                    {"(1,2,3,4)(5,6)", "(1,2)(5,6)", "(5,6,7)(?)"},    // skipped
                    {"(1,2,3,4,5,6,7)", "(1,2,4)(3,6,5)", "(8)(?)"},   // skipped
                    {"(1,2,3,4,5,6,7)", "(1,2,4)(3,6,5)"}};            // F21 inside A8
        default:
            return {};
    }
}

poly::Poly poly_lcm(const poly::Poly& a, const poly::Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto g = poly::gcd(a, b);
    return poly::make_monic(poly::divmod(poly::mul(a, b), g).first);
}


struct ShapeRealizer {
    Builder& b;
    const std::map<std::string, int>& label_index;  // label -> found index
    std::map<std::string, GModule> shapes;          // shape string / pim name -> module
    std::vector<blocks::BrauerTreeLine> trees;

    const GModule& simple(const std::string& label) const {
        auto it = label_index.find(label);
        if (it == label_index.end()) throw Error("unlabelled simple " + label);
        return b.found[size_t(it->second)].first;
    }

    std::vector<const GModule*> simple_ptrs(const std::vector<std::string>& labels,
                                            std::vector<GModule>& store) const {
        store.clear();
        store.reserve(labels.size());
        for (const auto& l : labels) store.push_back(simple(l));
        std::vector<const GModule*> out;
        for (const auto& m : store) out.push_back(&m);
        return out;
    }

    // Certify that a candidate really is the projective cover P(S): factor
    // dimensions of the tree shape, simple top and socle S, and free action
    // of a p-element.
    bool is_pim(const GModule& cand, const std::string& S, const blocks::ModuleShape& shape,
                const std::map<std::string, int>& dims) {
        if (cand.dim != shape.dim(dims)) return false;
        const GModule& SS = simple(S);
        if (gmod::hom_space(SS, cand).size() != 1) return false;  // socle S
        if (gmod::hom_space(cand, SS).size() != 1) return false;  // top S
        auto G = perms::alt_group(b.n);
        const perms::ClassRep* u = G->find_class(std::to_string(b.p));
        if (u) {
            auto blocks_of_u = mtx::jordan_partition(cand, u->rep);
            for (auto& [size, count] : blocks_of_u)
                if (size != b.p) return false;  // projectives act freely
        }
        std::multiset<int> want_dims, got_dims;
        for (auto& [lab, m] : shape.factors())
            for (int i = 0; i < m; i++) want_dims.insert(dims.at(lab));
        auto ch = mtx::chop(cand, 0xC0FFEE);
        for (auto& f : ch.factors)
            for (int i = 0; i < f.multiplicity; i++) got_dims.insert(f.module.dim);
        return want_dims == got_dims;
    }

    // Split P(S) out of a projective permutation module using random
    // elements of its endomorphism ring (spanned by the orbital matrices):
    // primary components of commuting endomorphisms are submodules, and
    // intersecting a few random decompositions isolates the summand.
    std::optional<GModule> split_out_pim(const GModule& Q, const std::vector<std::vector<int>>& tables,
                                         const std::string& S, const blocks::ModuleShape& shape,
                                         const std::map<std::string, int>& dims) {
        int want = shape.dim(dims);
        const ff::Field& F = *Q.F;
        auto orbs = perms::orbitals(tables, Q.dim);
        std::mt19937_64 rng(0x0b17a1ULL + Q.dim);
        std::vector<gmod::Submodule> candidates{gmod::whole_module(Q)};
        for (int round = 0; round < 8 && !candidates.empty(); round++) {
            ff::Mat phi(F, Q.dim, Q.dim);
            for (const auto& orb : orbs) {
                ff::Elt c = ff::Elt(rng() % F.q);
                if (!c) continue;
                for (auto [x, y] : orb) phi.at(x, y) = F.add(phi.at(x, y), c);
            }
            // minimal polynomial of phi via least common multiple of order
            // polynomials of a few vectors
            poly::Poly mp(F);
            for (int t = 0; t < 6; t++) {
                std::vector<ff::Elt> v(size_t(Q.dim), 0);
                for (auto& x : v) x = ff::Elt(rng() % F.q);
                mp = poly_lcm(mp, poly::order_polynomial(phi, v));
            }
            if (mp.deg() < 1) continue;
            auto facs = poly::factor(mp, rng);
            if (facs.size() < 2 && facs[0].second == 1) continue;
            std::vector<gmod::Submodule> comps;
            for (auto& [f, mult] : facs) {
                poly::Poly fe = f;
                for (int i = 1; i < mult; i++) fe = poly::mul(fe, f);
                ff::Mat FE = poly::eval_at_matrix(fe, phi);
                ff::Mat K = ff::left_kernel_basis(FE);
                gmod::Submodule W;
                W.basis = K;
                ff::rref(W.basis, &W.pivots);
                if (W.dim() > 0) comps.push_back(std::move(W));
            }
            if (comps.size() < 2) continue;
            std::vector<gmod::Submodule> refined;
            for (const auto& C : candidates)
                for (const auto& K : comps) {
                    auto X = gmod::submodule_intersection(C, K);
                    if (X.dim() >= want) refined.push_back(std::move(X));
                }
            if (!refined.empty()) candidates = std::move(refined);
            for (const auto& X : candidates) {
                if (X.dim() != want) continue;
                GModule M = gmod::sub_action(Q, X);
                if (is_pim(M, S, shape, dims)) return M;
            }
        }
        return std::nullopt;
    }

    // P(S): search the subgroup library for a p'-subgroup with fixed points
    // on S, then split its coset module.
    GModule extract_pim(const std::string& S, const blocks::BrauerTreeLine& tree,
                        const std::map<std::string, int>& dims) {
        blocks::ModuleShape shape = blocks::pim(tree, S);
        const GModule& SS = simple(S);
        auto G = perms::alt_group(b.n);
        for (const auto& gens : subgroup_library(b.n)) {
            bool bad = false;
            std::vector<perms::Perm> sub;
            for (const auto& gs : gens) {
                if (gs.find('?') != std::string::npos) {
                    bad = true;
                    break;
                }
                auto pp = perms::Perm::from_cycles(gs, b.n);
                if (!pp.is_even()) {
                    bad = true;
                    break;
                }
                sub.push_back(pp);
            }
            if (bad) continue;
            perms::CosetAction act;
            try {
                act = perms::coset_action(G, sub);
            } catch (const Error&) {
                continue;
            }
            if (act.subgroup_order % b.p == 0) continue;
            if (act.degree > 700) continue;
            // fixed points of the subgroup on S
            ff::Mat sys(*SS.F, SS.dim, int(sub.size()) * SS.dim);
            for (size_t t = 0; t < sub.size(); t++) {
                ff::Mat m = SS.act(sub[t]);
                for (int i = 0; i < SS.dim; i++)
                    for (int j = 0; j < SS.dim; j++)
                        sys.at(i, int(t) * SS.dim + j) = (i == j) ? SS.F->sub(m.at(i, j), 1) : m.at(i, j);
            }
            if (ff::left_kernel_basis(sys).rows == 0) continue;
            GModule Q = gmod::perm_module_from_tables(G, act.tables, *b.F,
                                                      "cosets" + std::to_string(act.degree));
            if (auto got = split_out_pim(Q, act.tables, S, shape, dims)) {
                b.note("P(" + S + ") from the degree-" + std::to_string(act.degree) + " coset module");
                return *got;
            }
        }
        throw Error("P(" + S + ") extraction failed for alt" + std::to_string(b.n) + " mod " +
                    std::to_string(b.p));
    }

    // Two-layer string with simple socle: preimage of the given second layer
    // inside P(socle).
    GModule realize_string(const GModule& P, const std::string& soc_label,
                           const std::vector<std::string>& layer2) {
        std::vector<GModule> store;
        auto socp = simple_ptrs({soc_label}, store);
        gmod::Submodule soc = gmod::socle_wrt(P, socp);
        GModule Q = gmod::quotient_action(P, soc, nullptr);
        std::vector<int> comp;
        gmod::quotient_action(P, soc, &comp);
        std::vector<GModule> store2;
        auto l2p = simple_ptrs(layer2, store2);
        gmod::Submodule up = gmod::socle_wrt(Q, l2p);
        // lift to P
        gmod::Submodule W = soc;
        for (int r = 0; r < up.basis.rows; r++) {
            std::vector<ff::Elt> lift(size_t(P.dim), 0);
            for (int t = 0; t < Q.dim; t++) lift[size_t(comp[size_t(t)])] = up.basis.at(r, t);
            ff::Mat row(*P.F, 1, P.dim);
            for (int j = 0; j < P.dim; j++) row.at(0, j) = lift[size_t(j)];
            gmod::Submodule sp = gmod::spin(P, ff::vstack(W.basis, row));
            W = sp;
        }
        return gmod::sub_action(P, W);
    }

    // Glue two modules along a common simple quotient T (kernel of the
    // difference of the two projections).
    GModule glue(const GModule& A, const GModule& B, const std::string& T) {
        const GModule& TT = simple(T);
        auto ha = gmod::hom_space(A, TT);
        auto hb = gmod::hom_space(B, TT);
        if (ha.empty() || hb.empty()) throw Error("glue: missing projection to " + T);
        GModule D = gmod::direct_sum(A, B);
        ff::Mat Phi(*A.F, A.dim + B.dim, TT.dim);
        for (int i = 0; i < A.dim; i++)
            for (int j = 0; j < TT.dim; j++) Phi.at(i, j) = ha[0].at(i, j);
        for (int i = 0; i < B.dim; i++)
            for (int j = 0; j < TT.dim; j++) Phi.at(A.dim + i, j) = A.F->neg(hb[0].at(i, j));
        ff::Mat K = ff::left_kernel_basis(Phi);
        gmod::Submodule W;
        W.basis = K;
        ff::rref(W.basis, &W.pivots);
        return gmod::sub_action(D, W);
    }
};


}  // namespace

BuiltCatalogue build_catalogue(int n, int p) {
    Builder b;
    b.n = n;
    b.p = p;
    b.F = &Field::get(p, catalogue_field_degree(n, p));
    b.G = perms::alt_group(n);
    auto want = expected_simples(n, p);

    for (const auto& [name, make] : build_menu(n, p)) {
        if (b.complete(want)) break;
        GModule M = make(b);
        b.absorb(std::move(M), name);
    }
    if (!b.complete(want)) {
        std::string missing;
        std::map<int, int> have;
        for (auto& [m, w] : b.found) have[m.dim]++;
        std::map<int, int> need;
        for (auto& s : want) need[s.dim]++;
        for (auto& [d, c] : need)
            if (have[d] < c) missing += " dim" + std::to_string(d) + "(" + std::to_string(have[d]) + "/" +
                                        std::to_string(c) + ")";
        throw Error("catalogue construction incomplete for alt" + std::to_string(n) + " mod " + std::to_string(p) +
                    ":" + missing);
    }

    Labeler lab{b, want};
    lab.run();

    BuiltCatalogue out;
    out.n = n;
    out.p = p;
    out.log = b.log;
    for (auto& [label, idx] : lab.assignment) {
        out.modules[label] = b.found[size_t(idx)].first;
        out.witnesses[label] = b.found[size_t(idx)].second;
    }

    // ---- shapes for cyclic-block catalogues ----
    const Catalogue& cat = Data::get().catalogue(n, p);
    if (cat.cyclic_blocks()) {
        std::map<std::string, int> label_index;
        for (auto& [label, idx] : lab.assignment) label_index[label] = idx;
        ShapeRealizer sr{b, label_index, {}, cat.trees};
        auto dims = cat.dims();

        const blocks::BrauerTreeLine* principal = nullptr;
        for (const auto& t : cat.trees)
            if (t.has_edge("1")) principal = &t;
        if (!principal) throw Error("no principal tree");
        blocks::ModuleShape p1shape = blocks::pim(*principal, "1");
        GModule P1 = [&]() {
            // the point permutation module is P(1) itself when p | n
            GModule pm = gmod::perm_module(n, *b.F);
            if (pm.dim == p1shape.dim(dims) && n % p == 0) return pm;
            return sr.extract_pim("1", *principal, dims);
        }();
        out.modules["P(1)"] = P1;

        auto add_pim = [&](const blocks::BrauerTreeLine& tree, const std::string& S) {
            if (S == "1" || out.modules.count("P(" + S + ")")) return;
            out.modules["P(" + S + ")"] = sr.extract_pim(S, tree, dims);
        };
        auto add_string = [&](const std::string& keyname, const std::string& pim_of, const std::string& soc,
                              const std::vector<std::string>& layer2) {
            GModule P = out.modules.at("P(" + pim_of + ")");
            sr.shapes[keyname] = sr.realize_string(P, soc, layer2);
            out.modules[keyname] = sr.shapes[keyname];
        };
        int key = n * 100 + p;
        if (key == 505) {
            add_pim(*principal, "3");
            add_string("3/3", "3", "3", {"3"});
        } else if (key == 503) {
            add_pim(*principal, "4");
        } else if (key == 605) {
            add_pim(*principal, "8");
            add_string("8/8", "8", "8", {"8"});
        } else if (key == 705) {
            add_pim(*principal, "13");
            add_pim(*principal, "8");
            add_pim(*principal, "6");
            add_string("8/13", "13", "13", {"8"});
            add_string("13/8", "8", "8", {"13"});
            add_string("6/8", "8", "8", {"6"});
            add_string("8/6", "6", "6", {"8"});
            add_string("13,6/8", "8", "8", {"13", "6"});
        } else if (key == 707) {
            add_pim(*principal, "5");
            add_pim(*principal, "10");
            add_string("10/5", "5", "5", {"10"});
            add_string("5/10", "10", "10", {"5"});
            add_string("10/10", "10", "10", {"10"});
            add_string("5,10/10", "10", "10", {"5", "10"});
            out.modules["5,10/5,10"] = sr.glue(out.modules.at("5,10/10"), out.modules.at("10/5"), "10");
        } else if (key == 805) {
            // principal P(13) for the hider; block-2 machinery for the sweep
            add_pim(*principal, "13");
            const blocks::BrauerTreeLine* block2 = nullptr;
            for (const auto& t : cat.trees)
                if (t.has_edge("7")) block2 = &t;
            out.modules["P(7)"] = sr.extract_pim("7", *block2, dims);
            add_pim(*block2, "21_2");
            add_string("21_2/7", "7", "7", {"21_2"});
            add_string("7/21_2", "21_2", "21_2", {"7"});
            add_string("21_2/21_2", "21_2", "21_2", {"21_2"});
            add_string("7,21_2/21_2", "21_2", "21_2", {"7", "21_2"});
            out.modules["7,21_2/7,21_2"] = sr.glue(out.modules.at("7,21_2/21_2"), out.modules.at("21_2/7"), "21_2");
        } else if (key == 807) {
            add_pim(*principal, "19");
        }
    }
    return out;
}

// ---- derived-data writing ---------------------------------------------------

namespace {

std::vector<std::string> unipotent_class_ids(int n, int p) {
    std::vector<std::string> out;
    auto G = perms::alt_group(n);
    for (const auto& c : G->classes) {
        int o = c.order;
        while (o % p == 0) o /= p;
        if (o != 1 || c.order == 1) continue;
        if (c.id.back() == '\'') continue;  // conjugate partner has the same type
        out.push_back(c.id);
    }
    return out;
}

}  // namespace

void write_derived_data(const std::string& dir, const std::vector<std::pair<int, int>>& which) {
    const Data& data = Data::get();
    for (auto [n, p] : which) {
        BuiltCatalogue bc = build_catalogue(n, p);
        const Catalogue& cat = data.catalogue(n, p);
        std::string stem = std::to_string(n) + "_" + std::to_string(p);
        fs::create_directories(dir + "/modules/" + stem);

        // module files
        for (const auto& [label, M] : bc.modules)
            gmod::save_file(M, dir + "/modules/" + stem + "/" + sanitize_label(label) + ".mod");

        // fingerprints of the simples
        auto G = perms::alt_group(n);
        std::vector<perms::ClassRep> classes;
        for (const auto& id : cat.fingerprint_classes) classes.push_back(*G->find_class(id));
        std::ofstream fp(dir + "/fingerprints/" + stem + ".csv");
        fp << "# label;class;order;eigenvalue multiplicities a_0:...:a_{m-1}\n";
        fp << "# generated by 'screener catalogue build'; do not edit\n";
        for (const auto& s : cat.simples) {
            auto f = mtx::fingerprint(bc.modules.at(s.label), classes);
            for (const auto& e : f.entries) {
                fp << s.label << ";" << e.class_id << ";" << e.order << ";";
                for (size_t j = 0; j < e.eig_counts.size(); j++) {
                    if (j) fp << ":";
                    fp << e.eig_counts[j];
                }
                fp << "\n";
            }
        }
        fp.close();

        // unipotent Jordan data for simples and shapes
        std::ofstream up(dir + "/unip/" + stem + ".csv");
        up << "# item;class;jordan type (space separated)\n";
        up << "# generated by 'screener catalogue build'; do not edit\n";
        auto uclasses = unipotent_class_ids(n, p);
        for (const auto& [item, M] : bc.modules) {
            for (const auto& cid : uclasses) {
                const perms::ClassRep* cr = G->find_class(cid);
                auto t = jordan::jordan_type(M, cr->rep);
                std::string ts;
                for (auto& [size, count] : t.blocks) {
                    if (!ts.empty()) ts += " ";
                    ts += std::to_string(size) + (count > 1 ? "^" + std::to_string(count) : "");
                }
                up << item << ";" << cid << ";" << ts << "\n";
                // record the dual shape under its own name too
                if (item.find('/') != std::string::npos) {
                    blocks::ModuleShape sh;  // parse layers from the key
                    std::vector<std::string> layer_strs = util::split(item, '/');
                    for (auto& ls : layer_strs) {
                        FactorMultiset fm;
                        for (auto& lab : util::split(ls, ',')) fm[lab]++;
                        sh.layers.push_back(fm);
                    }
                    auto dualname = sh.dual().to_string();
                    if (dualname != item) up << dualname << ";" << cid << ";" << ts << "\n";
                }
            }
        }
        up.close();
    }

    // manifest over every data file
    std::vector<std::string> files;
    for (auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string rel = fs::relative(entry.path(), dir).generic_string();
        if (rel == "MANIFEST.sha256") continue;
        files.push_back(rel);
    }
    std::sort(files.begin(), files.end());
    std::ofstream mf(dir + "/MANIFEST.sha256");
    mf << "# sha256,relative path\n";
    for (const auto& f : files) mf << util::sha256_hex(util::read_file(dir + "/" + f)) << "," << f << "\n";
}

std::vector<std::string> audit(const std::string& dir) {
    std::vector<std::string> problems;
    const Data& data = Data::get();
    for (auto [n, p] : catalogued_pairs()) {
        const Catalogue& cat = data.catalogue(n, p);
        std::string stem = std::to_string(n) + "_" + std::to_string(p);
        // static invariants
        for (const auto& s : cat.simples) {
            const SimpleInfo* d = cat.find(s.dual_label);
            if (!d) problems.push_back(stem + ": dual label missing for " + s.label);
            else if (d->h1 != s.h1) problems.push_back(stem + ": h1 asymmetry at " + s.label);
            if (d && cat.find(d->dual_label)->label != s.label)
                problems.push_back(stem + ": dual involution broken at " + s.label);
        }
        for (const auto& t : cat.trees) {
            try {
                t.validate();
                auto ind = blocks::indecomposables(t);
                if (int(ind.size()) != (t.defect_order - 1) * t.e())
                    problems.push_back(stem + " block " + t.block_id + ": indecomposable count " +
                                       std::to_string(ind.size()) + " != (|D|-1)e");
                auto dims = cat.dims();
                for (const auto& edge : t.edges) {
                    auto P = blocks::pim(t, edge);
                    if (P.dim(dims) % t.defect_order != 0)
                        problems.push_back(stem + ": dim P(" + edge + ") not divisible by |D|");
                }
            } catch (const Error& e) {
                problems.push_back(stem + ": " + e.what());
            }
        }
        // rebuild and compare
        try {
            BuiltCatalogue bc = build_catalogue(n, p);
            auto G = perms::alt_group(n);
            std::vector<perms::ClassRep> classes;
            for (const auto& id : cat.fingerprint_classes) classes.push_back(*G->find_class(id));
            for (const auto& s : cat.simples) {
                auto f = mtx::fingerprint(bc.modules.at(s.label), classes);
                auto it = cat.fingerprints.find(s.label);
                if (it == cat.fingerprints.end()) {
                    problems.push_back(stem + ": no shipped fingerprint for " + s.label);
                    continue;
                }
                if (!(f == it->second)) problems.push_back(stem + ": fingerprint drift for " + s.label);
                // identify must return the same label (catalogue self-consistency)
                try {
                    std::string got = data.identify(n, p, bc.modules.at(s.label));
                    if (got != s.label)
                        problems.push_back(stem + ": identify(" + s.label + ") returned " + got);
                } catch (const Error& e) {
                    problems.push_back(stem + ": identify(" + s.label + ") failed: " + e.what());
                }
                // shipped module files must match the rebuilt ones bit-exactly
                std::string path = dir + "/modules/" + stem + "/" + sanitize_label(s.label) + ".mod";
                if (!util::file_exists(path)) problems.push_back(stem + ": missing module file for " + s.label);
                else if (util::read_file(path) != gmod::save_text(bc.modules.at(s.label)))
                    problems.push_back(stem + ": module file drift for " + s.label);
            }
        } catch (const Error& e) {
            problems.push_back(stem + ": rebuild failed: " + std::string(e.what()));
        }
    }
    return problems;
}

}  // namespace altsieve::repdata
