#include "altsieve/repdata.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

#ifndef ALTSIEVE_DATA_DIR
#define ALTSIEVE_DATA_DIR "data"
#endif

namespace altsieve::repdata {

namespace {

std::string g_dir_override;

std::string sanitize(const std::string& label) {
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

poly::Cyclotomic parse_cyclo(const std::string& s, int line) {
    // Either a plain integer or "c0:c1:...:ck@m".
    auto at = s.find('@');
    if (at == std::string::npos) {
        poly::Cyclotomic v;
        v.m = 1;
        v.coeffs = {util::parse_int(s, line)};
        return v;
    }
    int m = int(util::parse_int(s.substr(at + 1), line));
    std::vector<long long> a;
    for (const auto& part : util::split(s.substr(0, at), ':')) a.push_back(util::parse_int(part, line));
    return poly::cyclotomic_from_exponents(m, a);
}

}  // namespace

// Class ids used for identification fingerprints, per catalogue. All orders
// are coprime to the characteristic and reachable inside the supported
// cyclotomic extension fields.
static std::vector<std::string> fingerprint_class_ids(int n, int p) {
    switch (p) {
        case 2:
            switch (n) {
                case 5: return {"3", "5", "5'"};
                case 6: return {"3", "3,3", "5", "5'"};
                case 7: return {"3", "3,3", "5", "7", "7'"};
                case 8: return {"3", "3,3", "5", "7", "7'", "5,3", "5,3'"};
                case 9: return {"3", "3,3", "3,3,3", "5", "5,3", "5,3'", "7", "9", "9'"};
                case 10: return {"3", "3,3", "3,3,3", "5", "5,5", "7", "9", "9'"};
            }
            break;
        case 3:
            switch (n) {
                case 5: return {"2,2", "5", "5'"};
                case 6: return {"2,2", "4,2", "5", "5'"};
                case 7: return {"2,2", "4,2", "5", "7", "7'"};
                case 8: return {"2,2", "2,2,2,2", "4,2", "4,4", "5", "7", "7'"};
                case 9: return {"2,2", "2,2,2,2", "4,2", "4,4", "5", "5,2,2", "7"};
            }
            break;
        case 5:
            switch (n) {
                case 5: return {"2,2", "3"};
                case 6: return {"2,2", "3", "3,3", "4,2"};
                case 7: return {"2,2", "3", "3,3", "3,2,2", "4,2", "7", "7'"};
                case 8: return {"2,2", "2,2,2,2", "3", "3,3", "3,2,2", "4,2", "4,4", "6,2", "7", "7'"};
            }
            break;
        case 7:
            switch (n) {
                case 7: return {"2,2", "3", "3,3", "3,2,2", "4,2", "5"};
                case 8: return {"2,2", "2,2,2,2", "3", "3,3", "4,2", "4,4", "5", "5,3", "5,3'", "6,2"};
            }
            break;
    }
    throw NotCatalogued("no fingerprint classes for alt" + std::to_string(n) + " in characteristic " +
                        std::to_string(p));
}

static std::vector<std::string> sieve_class_ids(int n, int p) {
    std::vector<std::string> out;
    for (const auto& id : fingerprint_class_ids(n, p)) {
        // keep classes of order 2, 3 or 5 (split partners included)
        auto base = id;
        if (!base.empty() && base.back() == '\'') base.pop_back();
        int order = 1;
        for (const auto& part : util::split(base, ',')) order = int(std::lcm(order, util::parse_int(part)));
        if (order == 2 || order == 3 || order == 5) out.push_back(id);
    }
    return out;
}

std::vector<std::pair<int, int>> catalogued_pairs() {
    return {{5, 2}, {5, 3}, {5, 5}, {6, 2}, {6, 3}, {6, 5}, {7, 2}, {7, 3}, {7, 5},
            {7, 7}, {8, 2}, {8, 3}, {8, 5}, {8, 7}, {9, 2}, {9, 3}, {10, 2}};
}

int catalogue_field_degree(int n, int p) {
    if (p == 2) return (n == 5 || n == 6 || n == 9) ? 2 : 1;
    if (p == 3) return (n == 9) ? 1 : 2;
    if (p == 5) return (n == 7 || n == 8) ? 2 : 1;
    if (p == 7) return (n == 8) ? 2 : 1;
    throw NotCatalogued("unsupported characteristic");
}

const SimpleInfo* Catalogue::find(const std::string& label) const {
    for (const auto& s : simples)
        if (s.label == label) return &s;
    return nullptr;
}

const SimpleInfo& Catalogue::need(const std::string& label) const {
    const SimpleInfo* s = find(label);
    if (!s) throw NotCatalogued("label " + label + " not in alt" + std::to_string(n) + " mod " + std::to_string(p));
    return *s;
}

int Catalogue::dim_of(const std::string& label) const { return need(label).dim; }

std::map<std::string, int> Catalogue::dims() const {
    std::map<std::string, int> d;
    for (const auto& s : simples) d[s.label] = s.dim;
    return d;
}

std::map<std::string, int> Catalogue::h1_map() const {
    std::map<std::string, int> d;
    for (const auto& s : simples) d[s.label] = s.h1;
    return d;
}

poly::Cyclotomic Catalogue::trace_of(const std::string& label, const std::string& class_id) const {
    auto it = fingerprints.find(label);
    if (it == fingerprints.end()) throw NotCatalogued("no fingerprint for " + label);
    for (const auto& e : it->second.entries) {
        if (e.class_id == class_id) return e.trace();
    }
    throw NotCatalogued("class " + class_id + " not fingerprinted for " + label);
}

const blocks::BrauerTreeLine* Catalogue::tree_containing(const std::string& label) const {
    for (const auto& t : trees)
        if (t.has_edge(label)) return &t;
    return nullptr;
}

std::vector<const TargetPattern*> TargetGroupInfo::patterns_of_order(int order) const {
    std::vector<const TargetPattern*> out;
    for (const auto& p : patterns)
        if (p.order == order) out.push_back(&p);
    return out;
}

std::vector<std::string> JordanTable::lookup(const std::string& kind, const jordan::JordanType& t) const {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (r.kind == kind && r.type == t) out.push_back(r.class_name);
    return out;
}

const JordanRow* JordanTable::row(const std::string& class_name, const std::string& kind) const {
    for (const auto& r : rows)
        if (r.class_name == class_name && r.kind == kind) return &r;
    return nullptr;
}

// ---- loading ----------------------------------------------------------------

void Data::set_dir(const std::string& dir) { g_dir_override = dir; }

std::string Data::dir() {
    if (!g_dir_override.empty()) return g_dir_override;
    if (const char* env = std::getenv("ALTSIEVE_DATA")) return env;
    return ALTSIEVE_DATA_DIR;
}

namespace {

std::vector<SimpleInfo> read_simples_csv(const std::string& path) {
    std::vector<SimpleInfo> out;
    for (const auto& [ln, row] : util::read_csv(path)) {
        if (row.size() < 6) throw ParseError("simples row needs 6+ fields", ln);
        SimpleInfo s;
        s.label = row[0];
        s.dim = int(util::parse_int(row[1], ln));
        s.h1 = int(util::parse_int(row[2], ln));
        s.dual_label = row[3];
        s.block_id = row[4];
        s.out_partner = row[5];  // stored raw (semicolon-joined orbit)
        if (row.size() > 6) s.note = row[6];
        out.push_back(std::move(s));
    }
    return out;
}

blocks::BrauerTreeLine read_tree(const std::string& path, const std::string& block_id) {
    blocks::BrauerTreeLine t;
    t.block_id = block_id;
    for (const auto& [ln, row] : util::read_csv(path)) {
        if (row[0] == "edges") {
            t.edges.assign(row.begin() + 1, row.end());
        } else if (row[0] == "exceptional") {
            if (row[1] == "none") t.exceptional_end = -1;
            else if (row[1] == "left") t.exceptional_end = 0;
            else if (row[1] == "right") t.exceptional_end = 1;
            else throw ParseError("bad exceptional field", ln);
        } else if (row[0] == "multiplicity") {
            t.exceptional_multiplicity = int(util::parse_int(row[1], ln));
        } else if (row[0] == "defect") {
            t.defect_order = int(util::parse_int(row[1], ln));
        }
    }
    t.validate();
    return t;
}

jordan::JordanType parse_type_spaces(const std::string& s) {
    jordan::JordanType t;
    for (const auto& tok : util::split(s, ' ')) {
        auto p = util::strip(tok);
        if (p.empty()) continue;
        auto caret = p.find('^');
        if (caret == std::string::npos) t.add(int(util::parse_int(p)), 1);
        else t.add(int(util::parse_int(p.substr(0, caret))), int(util::parse_int(p.substr(caret + 1))));
    }
    return t;
}

}  // namespace

const Data& Data::get() {
    static Data* instance = nullptr;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (instance) return *instance;
    auto* d = new Data();
    const std::string base = dir();

    // Manifest verification (when present).
    std::string manifest = base + "/MANIFEST.sha256";
    if (util::file_exists(manifest)) {
        for (const auto& [ln, row] : util::read_csv(manifest)) {
            if (row.size() != 2) throw ParseError("manifest rows are 'hash,path'", ln);
            std::string content = util::read_file(base + "/" + row[1]);
            if (util::sha256_hex(content) != row[0])
                throw Error("data file checksum mismatch: " + row[1]);
        }
    }

    for (auto [n, p] : catalogued_pairs()) {
        Catalogue c;
        c.n = n;
        c.p = p;
        c.field_k = catalogue_field_degree(n, p);
        std::string stem = std::to_string(n) + "_" + std::to_string(p);
        c.simples = read_simples_csv(base + "/simples/" + stem + ".csv");
        for (int b = 0; b < 8; b++) {
            std::string tp = base + "/trees/" + stem + "_" + std::to_string(b) + ".txt";
            if (util::file_exists(tp)) c.trees.push_back(read_tree(tp, std::to_string(b)));
        }
        c.fingerprint_classes = fingerprint_class_ids(n, p);
        c.sieve_classes = sieve_class_ids(n, p);
        std::string fp = base + "/fingerprints/" + stem + ".csv";
        if (util::file_exists(fp)) {
            for (const auto& [ln, row] : util::read_csv(fp, ';')) {
                if (row.size() != 4) throw ParseError("fingerprint rows are label,class,order,counts", ln);
                mtx::FingerprintEntry e;
                e.class_id = row[1];
                e.order = int(util::parse_int(row[2], ln));
                for (const auto& part : util::split(row[3], ':')) e.eig_counts.push_back(int(util::parse_int(part, ln)));
                auto& f = c.fingerprints[row[0]];
                f.dim = c.dim_of(row[0]);
                f.entries.push_back(std::move(e));
            }
        }
        std::string up = base + "/unip/" + stem + ".csv";
        if (util::file_exists(up)) {
            for (const auto& [ln, row] : util::read_csv(up, ';')) {
                if (row.size() != 3) throw ParseError("unipotent rows are item,class,type", ln);
                c.unipotent[{row[0], row[1]}] = parse_type_spaces(row[2]);
            }
        }
        d->catalogues_[{n, p}] = std::move(c);
    }

    for (const auto& [ln, row] : util::read_csv(base + "/targets.csv")) {
        TargetGroupInfo t;
        t.name = row[0];
        t.vmin_base = int(util::parse_int(row[1], ln));
        t.vmin_delta_p = int(util::parse_int(row[2], ln));
        t.lg_base = int(util::parse_int(row[3], ln));
        t.lg_delta_p = int(util::parse_int(row[4], ln));
        d->targets_[t.name] = std::move(t);
    }
    for (auto& [name, t] : d->targets_) {
        std::map<std::string, TargetPattern> pat;
        for (const auto& [ln, row] : util::read_csv(base + "/traces/" + name + ".csv")) {
            if (row.size() != 4) throw ParseError("trace rows are order,class,kind,value", ln);
            auto& p = pat[row[1]];
            p.class_id = row[1];
            p.order = int(util::parse_int(row[0], ln));
            auto v = parse_cyclo(row[3], ln);
            if (row[2] == "vmin") p.vmin = v;
            else if (row[2] == "lg") p.lg = v;
            else throw ParseError("kind must be vmin or lg", ln);
            t.shipped_orders.insert(p.order);
        }
        for (auto& [id, p] : pat) t.patterns.push_back(p);
        std::sort(t.patterns.begin(), t.patterns.end(),
                  [](const TargetPattern& a, const TargetPattern& b) { return a.class_id < b.class_id; });
    }

    for (const std::string& jf : {"E8_3", "E8_4", "E8_5", "E7_5", "E6_5"}) {
        std::string path = base + "/jordan/" + jf + ".csv";
        if (!util::file_exists(path)) continue;
        JordanTable jt;
        auto us = jf.find('_');
        jt.target = jf.substr(0, us);
        jt.key = int(util::parse_int(jf.substr(us + 1)));
        for (const auto& [ln, row] : util::read_csv(path)) {
            if (row[0] == "meta") {
                if (row[1] == "completeness") jt.completeness = row[2];
            } else if (row[0] == "row") {
                if (row.size() != 4) throw ParseError("jordan rows are row,class,kind,type", ln);
                jt.rows.push_back({row[1], row[2], parse_type_spaces(row[3])});
            }
        }
        d->jordan_.push_back(std::move(jt));
    }

    for (const auto& [ln, row] : util::read_csv(base + "/bespoke.csv")) {
        d->bespoke_.push_back({row[0], int(util::parse_int(row[1], ln)), row[2], int(util::parse_int(row[3], ln))});
    }

    for (const std::string& cf : {"c3a7_5_f1", "c3a7_5_f2"}) {
        std::string path = base + "/trees/" + cf + ".txt";
        if (util::file_exists(path)) d->cover_trees_.push_back(read_tree(path, cf));
    }

    instance = d;
    return *instance;
}

bool Data::has_catalogue(int n, int p) const { return catalogues_.count({n, p}) > 0; }

const Catalogue& Data::catalogue(int n, int p) const {
    auto it = catalogues_.find({n, p});
    if (it == catalogues_.end())
        throw NotCatalogued("no catalogue for alt" + std::to_string(n) + " in characteristic " + std::to_string(p));
    return it->second;
}

const TargetGroupInfo& Data::target(const std::string& name) const {
    auto it = targets_.find(name);
    if (it == targets_.end()) throw NotCatalogued("unknown target group " + name);
    return it->second;
}

std::vector<std::string> Data::target_names() const {
    std::vector<std::string> out;
    for (auto& [k, v] : targets_) out.push_back(k);
    return out;
}

const JordanTable* Data::jordan_table(const std::string& target, int key) const {
    for (const auto& t : jordan_)
        if (t.target == target && t.key == key) return &t;
    return nullptr;
}

int Data::min_unit_blocks(const std::string& target, int p, const std::string& kind) const {
    for (const auto& b : bespoke_)
        if (b.target == target && b.p == p && b.kind == kind) return b.min_unit_blocks;
    return 0;
}

const gmod::GModule& Data::realized(int n, int p, const std::string& item) const {
    std::string key = std::to_string(n) + "_" + std::to_string(p) + "/" + item;
    auto it = module_cache_.find(key);
    if (it != module_cache_.end()) return it->second;
    std::string path = dir() + "/modules/" + std::to_string(n) + "_" + std::to_string(p) + "/" + sanitize(item) + ".mod";
    if (!util::file_exists(path))
        throw NotCatalogued("no realized module shipped for " + item + " (alt" + std::to_string(n) + " mod " +
                            std::to_string(p) + ")");
    auto M = gmod::load_file(path);
    return module_cache_.emplace(key, std::move(M)).first->second;
}

bool Data::has_realized(int n, int p, const std::string& item) const {
    std::string path = dir() + "/modules/" + std::to_string(n) + "_" + std::to_string(p) + "/" + sanitize(item) + ".mod";
    return util::file_exists(path);
}

std::string Data::identify(int n, int p, const gmod::GModule& S) const {
    const Catalogue& c = catalogue(n, p);
    if (c.fingerprints.empty()) throw NotCatalogued("fingerprint table not built for alt" + std::to_string(n));
    std::vector<perms::ClassRep> classes;
    auto G = perms::alt_group(n);
    for (const auto& id : c.fingerprint_classes) {
        const perms::ClassRep* cr = G->find_class(id);
        if (!cr) throw Error("class " + id + " missing from group data");
        classes.push_back(*cr);
    }
    mtx::Fingerprint fp = mtx::fingerprint(S, classes);
    std::vector<std::string> hits;
    for (const auto& [label, ref] : c.fingerprints) {
        if (ref.dim != fp.dim) continue;
        if (ref == fp) hits.push_back(label);
    }
    if (hits.empty())
        throw UnknownSimple("no catalogued simple matches (dim " + std::to_string(S.dim) + ", alt" +
                            std::to_string(n) + " mod " + std::to_string(p) + ")");
    if (hits.size() > 1) throw AmbiguousLabel("fingerprint matches multiple labels: " + hits[0] + "," + hits[1]);
    return hits[0];
}

FactorMultiset Data::identify_factors(int n, int p, const mtx::ChopResult& r) const {
    FactorMultiset out;
    for (const auto& f : r.factors) out[identify(n, p, f.module)] += f.multiplicity;
    return out;
}

std::vector<FactorMultiset> Data::socle_series(const gmod::GModule& M) const {
    int n = M.group->n;
    int p = M.F->p;
    const Catalogue& c = catalogue(n, p);
    // Work over the splitting field so every catalogued simple is visible;
    // socles commute with the (separable) scalar extension.
    int K = int(std::lcm(c.field_k, M.F->k));
    const ff::Field& WF = ff::Field::get(p, K);
    gmod::GModule work = (K == M.F->k) ? M : gmod::extend_scalars(M, WF);
    std::vector<gmod::GModule> simples;
    std::vector<std::string> labels;
    for (const auto& s : c.simples) {
        if (s.dim > M.dim) continue;
        gmod::GModule sm = realized(n, p, s.label);
        if (sm.F->k != K) sm = gmod::extend_scalars(sm, WF);
        simples.push_back(std::move(sm));
        labels.push_back(s.label);
    }
    std::vector<FactorMultiset> layers;
    gmod::GModule cur = work;
    while (cur.dim > 0) {
        FactorMultiset layer;
        ff::Mat span(*cur.F, 0, cur.dim);
        for (size_t i = 0; i < simples.size(); i++) {
            auto homs = gmod::hom_space(simples[i], cur);
            if (homs.empty()) continue;
            layer[labels[i]] += int(homs.size());
            for (const auto& X : homs) span = ff::vstack(span, X);
        }
        gmod::Submodule soc;
        soc.basis = span;
        int rank = ff::rref(soc.basis, &soc.pivots);
        ff::Mat trimmed(*cur.F, rank, cur.dim);
        for (int r = 0; r < rank; r++)
            for (int j = 0; j < cur.dim; j++) trimmed.at(r, j) = soc.basis.at(r, j);
        soc.basis = std::move(trimmed);
        if (soc.dim() == 0) throw Error("socle computation stalled (uncatalogued factor?)");
        // verify the layer dimensions match
        int layer_dim = 0;
        for (auto& [lab, mult] : layer) layer_dim += c.dim_of(lab) * mult;
        if (layer_dim != soc.dim())
            throw Error("socle layer dimension mismatch: homs give " + std::to_string(layer_dim) + ", span " +
                        std::to_string(soc.dim()));
        layers.push_back(layer);
        if (soc.dim() == cur.dim) break;
        cur = gmod::quotient_action(cur, soc, nullptr);
    }
    return layers;
}

TargetGroupInfo Data::merge_trace_file(const TargetGroupInfo& base, const std::string& path) {
    TargetGroupInfo t = base;
    std::map<std::string, TargetPattern> extra;
    for (const auto& [ln, row] : util::read_csv(path)) {
        if (row[0] == "meta") continue;  // reserved
        if (row.size() != 4) throw ParseError("trace rows are order,class,kind,value", ln);
        int order = int(util::parse_int(row[0], ln));
        auto v = parse_cyclo(row[3], ln);
        // rows replace shipped patterns of the same class id, else extend
        TargetPattern* target_pat = nullptr;
        for (auto& p : t.patterns)
            if (p.class_id == row[1]) target_pat = &p;
        if (!target_pat) {
            auto& p = extra[row[1]];
            p.class_id = row[1];
            p.order = order;
            target_pat = &p;
        }
        if (target_pat->order != order) throw ParseError("class id reused with different order", ln);
        if (row[2] == "vmin") target_pat->vmin = v;
        else if (row[2] == "lg") target_pat->lg = v;
        else throw ParseError("kind must be vmin or lg", ln);
        t.shipped_orders.insert(order);
    }
    for (auto& [id, p] : extra) t.patterns.push_back(p);
    std::sort(t.patterns.begin(), t.patterns.end(),
              [](const TargetPattern& a, const TargetPattern& b) { return a.class_id < b.class_id; });
    return t;
}

}  // namespace altsieve::repdata
