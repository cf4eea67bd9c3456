#include "altsieve/perms.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

namespace altsieve::perms {

Perm Perm::operator*(const Perm& o) const {
    Perm r;
    r.img.resize(img.size());
    for (size_t i = 0; i < img.size(); i++) r.img[i] = o.img[img[i]];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.img.resize(img.size());
    for (size_t i = 0; i < img.size(); i++) r.img[img[i]] = int(i);
    return r;
}

bool Perm::is_identity() const {
    for (size_t i = 0; i < img.size(); i++)
        if (img[i] != int(i)) return false;
    return true;
}

bool Perm::is_even() const {
    int transpositions = 0;
    for (int len : cycle_type()) transpositions += len - 1;
    return transpositions % 2 == 0;
}

std::vector<int> Perm::cycle_type() const {
    std::vector<bool> seen(img.size(), false);
    std::vector<int> lens;
    for (size_t i = 0; i < img.size(); i++) {
        if (seen[i]) continue;
        int len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = size_t(img[j]);
            len++;
        }
        if (len > 1) lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

int Perm::order() const {
    int o = 1;
    for (int len : cycle_type()) o = int(std::lcm(o, len));
    return o;
}

std::string Perm::cycle_string() const {
    std::vector<bool> seen(img.size(), false);
    std::string out;
    for (size_t i = 0; i < img.size(); i++) {
        if (seen[i] || img[i] == int(i)) continue;
        out += "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += ",";
            out += std::to_string(j + 1);
            first = false;
            j = size_t(img[j]);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

uint64_t Perm::encode() const {
    uint64_t e = 0;
    for (size_t i = 0; i < img.size(); i++) e |= uint64_t(img[i]) << (4 * i);
    return e;
}

Perm Perm::from_cycles(const std::string& s, int n) {
    Perm g(n);
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') {
            i++;
            continue;
        }
        size_t close = s.find(')', i);
        if (close == std::string::npos) throw Error("bad cycle string: " + s);
        auto parts = util::split(s.substr(i + 1, close - i - 1), ',');
        std::vector<int> pts;
        for (auto& p : parts) pts.push_back(int(util::parse_int(util::strip(p))) - 1);
        for (size_t t = 0; t < pts.size(); t++) {
            int a = pts[t], b = pts[(t + 1) % pts.size()];
            if (a < 0 || a >= n) throw Error("cycle point out of range in " + s);
            g.img[a] = b;
        }
        i = close + 1;
    }
    return g;
}

unsigned long long factorial(int n) {
    unsigned long long r = 1;
    for (int i = 2; i <= n; i++) r *= (unsigned long long)(i);
    return r;
}

namespace {

Perm type_rep(const std::vector<int>& lens, int n) {
    // Cycles laid out left to right on 1..n.
    std::string s;
    int next = 1;
    for (int len : lens) {
        s += "(";
        for (int i = 0; i < len; i++) {
            if (i) s += ",";
            s += std::to_string(next + i);
        }
        s += ")";
        next += len;
    }
    return Perm::from_cycles(s, n);
}

// Does the Sym(n)-class of this cycle type split into two Alt(n)-classes?
// Criterion: all cycle lengths odd and pairwise distinct (counting fixed
// points as length-1 cycles).
bool class_splits(const std::vector<int>& lens, int n) {
    std::vector<int> all = lens;
    int moved = 0;
    for (int l : lens) moved += l;
    for (int i = 0; i < n - moved; i++) all.push_back(1);
    std::set<int> distinct(all.begin(), all.end());
    if (distinct.size() != all.size()) return false;
    for (int l : all)
        if (l % 2 == 0) return false;
    return true;
}

void add_class(GroupData& G, const std::vector<int>& lens) {
    int moved = 0;
    for (int l : lens) moved += l;
    if (moved > G.n) return;
    Perm rep = type_rep(lens, G.n);
    if (!rep.is_even()) throw Error("class rep not even: " + rep.cycle_string());
    std::string id;
    for (size_t i = 0; i < lens.size(); i++) {
        if (i) id += ",";
        id += std::to_string(lens[i]);
    }
    ClassRep c;
    c.id = id;
    c.rep = rep;
    c.order = rep.order();
    G.classes.push_back(c);
    if (class_splits(lens, G.n)) {
        // Partner class: conjugate by the transposition (n-1, n).
        Perm t(G.n);
        std::swap(t.img[G.n - 2], t.img[G.n - 1]);
        ClassRep c2;
        c2.id = id + "'";
        c2.rep = t.inverse() * rep * t;
        c2.order = c.order;
        G.classes.push_back(c2);
    }
}

}  // namespace

GroupPtr alt_group(int n) {
    if (n < 5 || n > 10) throw UnsupportedDegree("Alt(n) supported for 5 <= n <= 10, got n=" + std::to_string(n));
    static std::map<int, GroupPtr> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    auto G = std::make_shared<GroupData>();
    G->n = n;
    G->order = factorial(n) / 2;
    Perm a = Perm::from_cycles("(1,2,3)", n);
    std::string big;
    if (n % 2 == 1) {
        big = "(1";
        for (int i = 2; i <= n; i++) big += "," + std::to_string(i);
        big += ")";
    } else {
        big = "(2";
        for (int i = 3; i <= n; i++) big += "," + std::to_string(i);
        big += ")";
    }
    Perm b = Perm::from_cycles(big, n);
    if (!a.is_even() || !b.is_even()) throw Error("generators must be even");
    G->generators = {a, b};

    // The paper's named permutations, kept wherever the cycles fit.
    struct Named {
        const char* label;
        const char* cycles;
        int min_n;
    };
    static const Named named[] = {
        {"t", "(1,2)(3,4)", 4},  {"u", "(1,2,3,4,5)", 5},          {"v", "(1,2,3,4)(5,6)", 6},
        {"w", "(1,2,3,4,5,6,7)", 7}, {"x", "(1,2,3)", 3},          {"y", "(1,2,3)(4,5,6)", 6},
        {"z", "(1,2,3,4,5,6,7,8,9)", 9},
    };
    for (const auto& nm : named)
        if (n >= nm.min_n) G->named_reps[nm.label] = Perm::from_cycles(nm.cycles, n);

    // Conjugacy-class representatives used for fingerprints and traces.
    add_class(*G, {2, 2});
    add_class(*G, {2, 2, 2, 2});
    add_class(*G, {3});
    add_class(*G, {3, 3});
    add_class(*G, {3, 3, 3});
    add_class(*G, {3, 2, 2});
    add_class(*G, {4, 2});
    add_class(*G, {4, 4});
    add_class(*G, {4, 3, 2});
    add_class(*G, {5});
    add_class(*G, {5, 2, 2});
    add_class(*G, {5, 3});
    add_class(*G, {5, 5});
    add_class(*G, {6, 2});
    add_class(*G, {7});
    add_class(*G, {7, 3});
    add_class(*G, {9});

    cache[n] = G;
    return G;
}

const ClassRep* GroupData::find_class(const std::string& id) const {
    for (const auto& c : classes)
        if (c.id == id) return &c;
    return nullptr;
}

const std::vector<int>& GroupData::element_word(const Perm& g) const {
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    uint64_t key = g.encode();
    auto it = word_cache_.find(key);
    if (it != word_cache_.end()) return it->second;

    // Bidirectional BFS in the Cayley graph on generators and inverses.
    // Letters: 0 -> gen0, 1 -> gen1, 2 -> gen0^-1, 3 -> gen1^-1.
    std::vector<Perm> step = {generators[0], generators[1], generators[0].inverse(), generators[1].inverse()};
    Perm id(n);
    if (g == id) return word_cache_[key] = {};

    std::map<uint64_t, std::vector<int>> fwd{{id.encode(), {}}};   // word w with perm(w) = state
    std::map<uint64_t, std::vector<int>> bwd{{g.encode(), {}}};    // word w with state * perm(w) = g
    std::map<uint64_t, Perm> fwd_perm{{id.encode(), id}}, bwd_perm{{g.encode(), g}};
    std::deque<uint64_t> fq{id.encode()}, bq{g.encode()};

    auto letter_inv = [](int l) { return l ^ 2; };

    for (int depth = 0; depth < 40; depth++) {
        bool forward = fq.size() <= bq.size();
        auto& q = forward ? fq : bq;
        auto& mine = forward ? fwd : bwd;
        auto& mine_perm = forward ? fwd_perm : bwd_perm;
        auto& other = forward ? bwd : fwd;
        std::deque<uint64_t> next;
        while (!q.empty()) {
            uint64_t cur = q.front();
            q.pop_front();
            const Perm& cp = mine_perm[cur];
            for (int l = 0; l < 4; l++) {
                // backward: predecessor state np with np * step[l] = cur
                Perm np = forward ? (cp * step[l]) : (cp * step[l].inverse());
                uint64_t ne = np.encode();
                if (mine.count(ne)) continue;
                std::vector<int> w = mine[cur];
                if (forward) w.push_back(l);
                else w.insert(w.begin(), l);
                mine[ne] = w;
                mine_perm[ne] = np;
                auto hit = other.find(ne);
                if (hit != other.end()) {
                    // join: g = fwd-word * bwd-word
                    std::vector<int> full = forward ? w : fwd[ne];
                    const std::vector<int>& tail = forward ? bwd[ne] : w;
                    full.insert(full.end(), tail.begin(), tail.end());
                    // verify
                    Perm check(n);
                    for (int letter : full) check = check * step[letter];
                    if (!(check == g)) throw Error("element_word: BFS join failed");
                    return word_cache_[key] = full;
                }
                next.push_back(ne);
            }
        }
        q = std::move(next);
        (void)letter_inv;
    }
    throw Error("element_word: search exhausted for " + g.cycle_string());
}

SubgroupEmbedding point_stabilizer_embedding(int n) {
    if (n < 6 || n > 10) throw UnsupportedDegree("point stabilizer embedding needs 6 <= n <= 10");
    SubgroupEmbedding e;
    e.ambient = alt_group(n);
    e.sub = alt_group(n - 1);
    for (const auto& g : e.sub->generators) {
        Perm img(n);
        for (int i = 0; i < n - 1; i++) img.img[i] = g.img[i];
        e.images.push_back(img);
    }
    return e;
}

ff::Mat perm_matrix(const Perm& g, const ff::Field& F) {
    ff::Mat m(F, g.degree(), g.degree());
    for (int i = 0; i < g.degree(); i++) m.at(i, g(i)) = 1;
    return m;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // lexicographic enumeration
    std::function<void(int)> rec = [&](int start) {
        if (int(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; i++) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<int> subset_action(const Perm& g, const std::vector<std::vector<int>>& subsets) {
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < subsets.size(); i++) index[subsets[i]] = int(i);
    std::vector<int> act(subsets.size());
    for (size_t i = 0; i < subsets.size(); i++) {
        std::vector<int> im;
        for (int p : subsets[i]) im.push_back(g(p));
        std::sort(im.begin(), im.end());
        act[i] = index.at(im);
    }
    return act;
}

FlagSet subset_point_flags(int n, int k) {
    FlagSet fs;
    fs.subsets = k_subsets(n, k);
    for (size_t s = 0; s < fs.subsets.size(); s++)
        for (int p = 0; p < n; p++)
            if (!std::binary_search(fs.subsets[s].begin(), fs.subsets[s].end(), p))
                fs.flags.push_back({int(s), p});
    return fs;
}

CosetAction coset_action(const GroupPtr& G, const std::vector<Perm>& subgens) {
    // Enumerate the subgroup by closure.
    std::set<uint64_t> H;
    std::vector<Perm> elems{Perm(G->n)};
    H.insert(elems[0].encode());
    for (size_t head = 0; head < elems.size(); head++) {
        for (const auto& s : subgens) {
            Perm nx = elems[head] * s;
            if (H.insert(nx.encode()).second) elems.push_back(nx);
        }
        if (elems.size() > 4096) throw PreconditionViolated("coset_action: subgroup too large to enumerate");
    }
    // Canonical representative of the right coset Hg: minimal encode of h*g.
    auto canon = [&](const Perm& g) {
        uint64_t best = ~0ull;
        Perm bestp;
        for (const auto& h : elems) {
            Perm hg = h * g;
            uint64_t e = hg.encode();
            if (e < best) {
                best = e;
                bestp = hg;
            }
        }
        return bestp;
    };
    CosetAction act;
    act.subgroup_order = elems.size();
    std::map<uint64_t, int> index;
    std::vector<Perm> reps;
    Perm id(G->n);
    reps.push_back(canon(id));
    index[reps[0].encode()] = 0;
    for (size_t head = 0; head < reps.size(); head++) {
        for (const auto& g : G->generators) {
            Perm nx = canon(reps[head] * g);
            if (!index.count(nx.encode())) {
                index[nx.encode()] = int(reps.size());
                reps.push_back(nx);
            }
        }
    }
    act.degree = int(reps.size());
    if (G->order % (act.subgroup_order * act.degree) != 0 || G->order != act.subgroup_order * act.degree)
        throw Error("coset_action: orbit does not cover the group");
    for (const auto& g : G->generators) {
        std::vector<int> table(reps.size());
        for (size_t i = 0; i < reps.size(); i++) table[i] = index.at(canon(reps[i] * g).encode());
        act.tables.push_back(std::move(table));
    }
    return act;
}

std::vector<std::vector<std::pair<int, int>>> orbitals(const std::vector<std::vector<int>>& tables, int degree) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<bool> seen(size_t(degree) * degree, false);
    for (int a = 0; a < degree; a++)
        for (int b = 0; b < degree; b++) {
            if (seen[size_t(a) * degree + b]) continue;
            std::vector<std::pair<int, int>> orbit;
            std::vector<std::pair<int, int>> frontier{{a, b}};
            seen[size_t(a) * degree + b] = true;
            while (!frontier.empty()) {
                auto [x, y] = frontier.back();
                frontier.pop_back();
                orbit.push_back({x, y});
                for (const auto& t : tables) {
                    int nx = t[size_t(x)], ny = t[size_t(y)];
                    if (!seen[size_t(nx) * degree + ny]) {
                        seen[size_t(nx) * degree + ny] = true;
                        frontier.push_back({nx, ny});
                    }
                }
            }
            out.push_back(std::move(orbit));
        }
    return out;
}

std::vector<int> flag_action(const Perm& g, const FlagSet& fs) {
    auto sub_act = subset_action(g, fs.subsets);
    std::map<std::pair<int, int>, int> index;
    for (size_t i = 0; i < fs.flags.size(); i++) index[fs.flags[i]] = int(i);
    std::vector<int> act(fs.flags.size());
    for (size_t i = 0; i < fs.flags.size(); i++) {
        auto [s, p] = fs.flags[i];
        act[i] = index.at({sub_act[s], g(p)});
    }
    return act;
}

}  // namespace altsieve::perms
