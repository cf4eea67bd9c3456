#include "altsieve/blocks.hpp"

#include <algorithm>
#include <set>

namespace altsieve::blocks {

bool BrauerTreeLine::has_edge(const std::string& s) const {
    return std::find(edges.begin(), edges.end(), s) != edges.end();
}

void BrauerTreeLine::validate() const {
    if (edges.empty()) throw Unsupported("empty Brauer tree");
    if (exceptional_multiplicity < 1) throw Unsupported("bad exceptional multiplicity");
    if (exceptional_end != -1 && exceptional_end != 0 && exceptional_end != 1)
        throw Unsupported("exceptional vertex must lie at an end of the line");
    if (exceptional_end == -1 && exceptional_multiplicity != 1)
        throw Unsupported("multiplicity > 1 requires an exceptional vertex");
    if (e() * exceptional_multiplicity != defect_order - 1)
        throw Unsupported("tree " + block_id + ": e*mult != |D|-1");
}

FactorMultiset ModuleShape::factors() const {
    FactorMultiset m;
    for (const auto& layer : layers)
        for (const auto& [lab, mult] : layer) m[lab] += mult;
    return m;
}

int ModuleShape::dim(const std::map<std::string, int>& dims) const {
    int d = 0;
    for (const auto& [lab, mult] : factors()) {
        auto it = dims.find(lab);
        if (it == dims.end()) throw NotCatalogued("no dimension for label " + lab);
        d += it->second * mult;
    }
    return d;
}

bool ModuleShape::uniserial() const {
    for (const auto& layer : layers)
        if (multiset_total(layer) != 1) return false;
    return true;
}

ModuleShape ModuleShape::dual() const {
    ModuleShape d = *this;
    std::reverse(d.layers.begin(), d.layers.end());
    return d;
}

std::string ModuleShape::to_string() const {
    std::string s;
    for (const auto& layer : layers) {
        if (!s.empty()) s += "/";
        bool first = true;
        // within a layer, labels joined by commas, each repeated per multiplicity
        for (const auto& [lab, mult] : layer)
            for (int i = 0; i < mult; i++) {
                if (!first) s += ",";
                s += lab;
                first = false;
            }
    }
    return s;
}

ModuleShape simple_shape(const std::string& label) {
    ModuleShape s;
    s.layers.push_back({{label, 1}});
    return s;
}

namespace {

// Radical layers of the uniserial arm of P(S) around one vertex of the line.
// Vertex valency is 1 or 2; `other` is the other incident edge if any.
// Revolutions: the exceptional multiplicity if the vertex is exceptional.
std::vector<std::string> arm(const std::string& S, const std::optional<std::string>& other, int revolutions) {
    std::vector<std::string> seq;
    for (int r = 0; r < revolutions; r++) {
        seq.push_back(S);
        if (other) seq.push_back(*other);
    }
    seq.erase(seq.begin());  // delete the leading copy of S
    return seq;
}

}  // namespace

ModuleShape pim(const BrauerTreeLine& tree, const std::string& S) {
    tree.validate();
    auto it = std::find(tree.edges.begin(), tree.edges.end(), S);
    if (it == tree.edges.end()) throw UnknownEdge("label " + S + " is not an edge of block " + tree.block_id);
    int idx = int(it - tree.edges.begin());
    // vertices idx and idx+1 flank edge idx on the line (vertices 0..e)
    auto vertex_arm = [&](int v) {
        std::optional<std::string> other;
        if (v > 0 && v - 1 != idx) other = tree.edges[size_t(v - 1)];
        if (v < tree.e() && v != idx) other = tree.edges[size_t(v)];
        int rev = 1;
        if ((tree.exceptional_end == 0 && v == 0) || (tree.exceptional_end == 1 && v == tree.e()))
            rev = tree.exceptional_multiplicity;
        return arm(S, other, rev);
    };
    std::vector<std::string> left = vertex_arm(idx);
    std::vector<std::string> right = vertex_arm(idx + 1);
    ModuleShape shape;
    shape.layers.push_back({{S, 1}});
    size_t mid = std::max(left.size(), right.size());
    for (size_t i = 0; i < mid; i++) {
        FactorMultiset layer;
        if (i < left.size()) layer[left[i]]++;
        if (i < right.size()) layer[right[i]]++;
        shape.layers.push_back(layer);
    }
    shape.layers.push_back({{S, 1}});
    return shape;
}

std::vector<ModuleShape> indecomposables(const BrauerTreeLine& tree) {
    tree.validate();
    if (tree.exceptional_multiplicity > 2)
        throw Unsupported("exceptional multiplicity > 2 not needed for alternating groups");
    // Work on the (possibly) doubled line: multiplicity 2 at an end reflects
    // the line through the exceptional vertex.
    std::vector<std::string> line = tree.edges;
    if (tree.exceptional_multiplicity == 2) {
        if (tree.exceptional_end == 0) std::reverse(line.begin(), line.end());
        std::vector<std::string> refl(line.rbegin(), line.rend());
        line.insert(line.end(), refl.begin(), refl.end());
    }
    std::set<std::string> seen;
    std::vector<ModuleShape> out;
    int L = int(line.size());
    for (int i = 0; i < L; i++)
        for (int j = i; j < L; j++)
            for (int phase = 0; phase < 2; phase++) {
                if (i == j && phase == 1) continue;
                FactorMultiset soc, top;
                for (int t = i; t <= j; t++) {
                    bool in_soc = ((t - i) % 2 == 0) ^ (phase == 1);
                    (in_soc ? soc : top)[line[size_t(t)]]++;
                }
                ModuleShape shape;
                if (top.empty()) {
                    shape.layers.push_back(soc);
                } else {
                    shape.layers.push_back(top);
                    shape.layers.push_back(soc);
                }
                auto key = shape.to_string();
                if (seen.insert(key).second) out.push_back(shape);
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ModuleShape> trivial_hiders(const BrauerTreeLine& tree) {
    tree.validate();
    if (!tree.has_edge("1")) throw Unsupported("block " + tree.block_id + " does not contain the trivial module");
    if (tree.exceptional_multiplicity == 2) {
        // hypothesis: exceptional vertex of valency 1, i.e. at an end
        if (tree.exceptional_end == -1) throw Unsupported("multiplicity 2 requires an end exceptional vertex");
    }
    auto it = std::find(tree.edges.begin(), tree.edges.end(), std::string("1"));
    int idx = int(it - tree.edges.begin());
    std::vector<ModuleShape> out;
    for (int nb : {idx - 1, idx + 1}) {
        if (nb < 0 || nb >= tree.e()) continue;
        ModuleShape P = pim(tree, tree.edges[size_t(nb)]);
        // keep only hiders with no trivial in top or socle
        if (P.layers.front().count("1") || P.layers.back().count("1")) continue;
        out.push_back(P);
    }
    return out;
}

HidingCertificate can_hide_trivials(const FactorMultiset& factors, const std::vector<BrauerTreeLine>& trees,
                                    bool strict_parity, const std::map<std::string, int>* h1) {
    HidingCertificate cert;
    auto trivial_it = factors.find("1");
    int trivials = (trivial_it == factors.end()) ? 0 : trivial_it->second;
    if (trivials == 0) {
        cert.verdict = HidingCertificate::CanHide;
        cert.detail = "no trivial factors";
        for (const auto& [lab, mult] : factors)
            for (int i = 0; i < mult; i++) cert.witness.push_back(simple_shape(lab));
        return cert;
    }
    const BrauerTreeLine* principal = nullptr;
    for (const auto& t : trees)
        if (t.has_edge("1")) principal = &t;
    if (!principal) throw Unsupported("no catalogued tree contains the trivial module");

    auto hiders = trivial_hiders(*principal);
    if (hiders.empty()) {
        cert.verdict = HidingCertificate::MustFixLine;
        cert.detail = "no indecomposable can bury a trivial factor";
        return cert;
    }
    // Each hider buries exactly one trivial. Try all splits of the trivial
    // count across the (at most two) hider types.
    auto attempt = [&](const std::vector<int>& counts) -> bool {
        FactorMultiset need;
        for (size_t h = 0; h < hiders.size(); h++) {
            auto f = hiders[h].factors();
            for (const auto& [lab, mult] : f) need[lab] += mult * counts[h];
        }
        for (const auto& [lab, mult] : need) {
            auto it = factors.find(lab);
            int have = (it == factors.end()) ? 0 : it->second;
            if (have < mult) return false;
        }
        cert.consumed = need;
        cert.witness.clear();
        for (size_t h = 0; h < hiders.size(); h++)
            for (int i = 0; i < counts[h]; i++) cert.witness.push_back(hiders[h]);
        FactorMultiset left = factors;
        for (const auto& [lab, mult] : need) left[lab] -= mult;
        for (const auto& [lab, mult] : left)
            for (int i = 0; i < mult; i++) cert.witness.push_back(simple_shape(lab));
        return true;
    };
    bool ok = false;
    if (hiders.size() == 1) {
        ok = attempt({trivials});
    } else {
        for (int a = trivials; a >= 0 && !ok; a--) ok = attempt({a, trivials - a});
    }
    if (!ok) {
        cert.verdict = HidingCertificate::MustFixLine;
        std::string costs;
        for (auto& h : hiders) {
            if (!costs.empty()) costs += " or ";
            costs += h.to_string();
        }
        cert.detail = std::to_string(trivials) + " trivial factor(s) need disjoint copies of " + costs +
                      "; not enough non-trivial factors";
        return cert;
    }
    if (strict_parity && trivials % 2 == 1 && h1) {
        // Sharper count used when every cohomology carrier is a single label
        // V with dim H^1 = 2: an odd number 2n-1 of trivials needs at least
        // 2n copies of V.
        std::string carrier;
        bool single = true;
        for (const auto& [lab, mult] : factors) {
            auto it = h1->find(lab);
            if (it != h1->end() && it->second > 0 && lab != "1") {
                if (!carrier.empty() && carrier != lab) single = false;
                carrier = lab;
            }
        }
        if (single && !carrier.empty() && h1->at(carrier) == 2) {
            int have = factors.count(carrier) ? factors.at(carrier) : 0;
            if (have < trivials + 1) {
                cert.verdict = HidingCertificate::MustFixLine;
                cert.detail = "strict parity: " + std::to_string(trivials) + " trivials need " +
                              std::to_string(trivials + 1) + " copies of " + carrier;
                return cert;
            }
        }
    }
    cert.verdict = HidingCertificate::CanHide;
    if (cert.detail.empty()) cert.detail = "trivials buried in " + std::to_string(trivials) + " hider(s)";
    return cert;
}

}  // namespace altsieve::blocks
