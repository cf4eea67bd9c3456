#include "altsieve/mtx.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace altsieve::mtx {

Mat AlgebraWord::evaluate(const GModule& M) const {
    const Field& F = *M.F;
    Mat acc(F, M.dim, M.dim);
    for (const auto& term : terms) {
        Mat prod = Mat::identity(F, M.dim);
        for (int g : term.gens) prod = ff::mul(prod, M.gens[g]);
        Elt c = F.from_int(term.coeff);
        if (c == 0) continue;
        for (size_t i = 0; i < acc.a.size(); i++) acc.a[i] = F.add(acc.a[i], F.mul(c, prod.a[i]));
    }
    return acc;
}

std::string AlgebraWord::to_string() const {
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty()) s += " + ";
        s += std::to_string(t.coeff) + "*";
        if (t.gens.empty()) s += "1";
        for (int g : t.gens) s += (g == 0 ? "a" : "b");
    }
    return s;
}

poly::Poly PeakWitness::factor(const Field& F) const {
    const Field& own = Field::get(field_p, field_k);
    std::vector<Elt> coeffs;
    if (F.same(own)) {
        for (int c : factor_coeffs) coeffs.push_back(Elt(c));
    } else {
        auto table = F.embedding_table(own);
        for (int c : factor_coeffs) coeffs.push_back(table[size_t(c)]);
    }
    return poly::Poly(F, coeffs);
}

int ChopResult::total_dim() const {
    int t = 0;
    for (const auto& f : factors) t += f.multiplicity * f.module.dim;
    return t;
}

namespace {

AlgebraWord random_word(std::mt19937_64& rng, int p, int num_gens) {
    AlgebraWord w;
    int terms = 2 + int(rng() % 3);
    for (int t = 0; t < terms; t++) {
        AlgebraWord::Term term;
        term.coeff = 1 + int(rng() % (p == 2 ? 1 : (p - 1)));
        int len = 1 + int(rng() % 3);
        for (int i = 0; i < len; i++) term.gens.push_back(int(rng() % num_gens));
        w.terms.push_back(term);
    }
    return w;
}

std::vector<Elt> random_vector(std::mt19937_64& rng, const Field& F, int n) {
    std::vector<Elt> v(n, 0);
    for (auto& x : v) x = Elt(rng() % F.q);
    bool nz = false;
    for (auto x : v) nz |= (x != 0);
    if (!nz) v[rng() % n] = 1;
    return v;
}

// Spin with an explicit matrix list (used for the transpose test, where the
// matrices are not a group representation but the closure argument is the
// same).
gmod::Submodule spin_with_matrices(const Field& F, const std::vector<Mat>& mats, const std::vector<Elt>& seed) {
    gmod::Submodule W;
    int n = int(seed.size());
    W.basis = Mat(F, 0, n);
    std::vector<std::vector<Elt>> queue;
    auto insert = [&](std::vector<Elt> v) -> bool {
        v = gmod::reduce_row(W, std::move(v));
        int pc = -1;
        for (int j = 0; j < n; j++)
            if (v[j]) {
                pc = j;
                break;
            }
        if (pc < 0) return false;
        Elt il = F.inv(v[pc]);
        for (auto& x : v) x = F.mul(x, il);
        Mat grown(F, W.basis.rows + 1, n);
        std::copy(W.basis.a.begin(), W.basis.a.end(), grown.a.begin());
        for (int j = 0; j < n; j++) grown.at(W.basis.rows, j) = v[j];
        std::vector<int> piv = W.pivots;
        piv.push_back(pc);
        // keep rows ordered by pivot for clean reduction
        std::vector<int> order(piv.size());
        for (size_t i = 0; i < order.size(); i++) order[i] = int(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return piv[a] < piv[b]; });
        Mat sorted(F, grown.rows, grown.cols);
        std::vector<int> spiv;
        for (size_t i = 0; i < order.size(); i++) {
            for (int j = 0; j < n; j++) sorted.at(int(i), j) = grown.at(order[i], j);
            spiv.push_back(piv[order[i]]);
        }
        // re-reduce above-pivot entries
        for (int r = int(order.size()) - 1; r >= 0; r--) {
            for (int rr = 0; rr < r; rr++) {
                Elt c = sorted.at(rr, spiv[r]);
                if (c)
                    for (int j = 0; j < n; j++) sorted.at(rr, j) = F.sub(sorted.at(rr, j), F.mul(c, sorted.at(r, j)));
            }
        }
        W.basis = std::move(sorted);
        W.pivots = std::move(spiv);
        return true;
    };
    if (insert(seed)) queue.push_back(seed);
    size_t head = 0;
    while (head < queue.size()) {
        auto v = queue[head++];
        for (const auto& m : mats) {
            std::vector<Elt> w(n, 0);
            for (int i = 0; i < n; i++) {
                if (!v[i]) continue;
                const Elt* mr = m.row(i);
                for (int j = 0; j < n; j++)
                    if (mr[j]) w[j] = F.add(w[j], F.mul(v[i], mr[j]));
            }
            if (insert(w)) queue.push_back(w);
        }
    }
    return W;
}

// Standard-basis spin: deterministic schedule plus the linear relations that
// present the module as a cyclic module on the seed.
struct SpinSchedule {
    std::vector<int> parent, gidx;  // b[i] = b[parent[i]] * gen[gidx[i]], b[0] = seed
    struct Relation {
        int src, g;
        std::vector<Elt> coeffs;  // b[src] * gen[g] = sum_j coeffs[j] b[j]
    };
    std::vector<Relation> relations;
    Mat basis;  // rows are b_i in module coordinates
};

SpinSchedule standard_spin(const GModule& M, const std::vector<Elt>& seed) {
    const Field& F = *M.F;
    int n = M.dim;
    SpinSchedule out;
    out.basis = Mat(F, 0, n);
    Mat ech(F, 0, n);
    std::vector<int> piv;
    std::vector<std::vector<Elt>> combos;  // echelon row as combination of b's

    auto try_add = [&](const std::vector<Elt>& u, int src, int g) {
        std::vector<Elt> residual = u;
        std::vector<Elt> cvec(size_t(out.basis.rows), 0);
        for (int r = 0; r < ech.rows; r++) {
            Elt lead = residual[piv[r]];
            if (lead) {
                const Elt* er = ech.row(r);
                for (int j = 0; j < n; j++) residual[j] = F.sub(residual[j], F.mul(lead, er[j]));
                for (size_t t = 0; t < combos[r].size(); t++) cvec[t] = F.add(cvec[t], F.mul(lead, combos[r][t]));
            }
        }
        int pc = -1;
        for (int j = 0; j < n; j++)
            if (residual[j]) {
                pc = j;
                break;
            }
        if (pc < 0) {
            if (src >= 0) out.relations.push_back({src, g, cvec});
            return false;
        }
        // new basis vector: u itself
        int idx = out.basis.rows;
        Mat gb(F, idx + 1, n);
        std::copy(out.basis.a.begin(), out.basis.a.end(), gb.a.begin());
        for (int j = 0; j < n; j++) gb.at(idx, j) = u[j];
        out.basis = std::move(gb);
        out.parent.push_back(src);
        out.gidx.push_back(g);
        // echelon row: residual, combination: (e_idx - cvec) / lead
        Elt il = F.inv(residual[pc]);
        for (auto& x : residual) x = F.mul(x, il);
        std::vector<Elt> combo(size_t(idx) + 1, 0);
        combo[size_t(idx)] = il;
        for (size_t t = 0; t < cvec.size(); t++) combo[t] = F.sub(combo[t], F.mul(il, cvec[t]));
        Mat ge(F, ech.rows + 1, n);
        std::copy(ech.a.begin(), ech.a.end(), ge.a.begin());
        for (int j = 0; j < n; j++) ge.at(ech.rows, j) = residual[j];
        ech = std::move(ge);
        piv.push_back(pc);
        for (auto& c : combos) c.resize(size_t(idx) + 1, 0);
        combos.push_back(combo);
        return true;
    };

    try_add(seed, -1, -1);
    size_t head = 0;
    while (head < size_t(out.basis.rows)) {
        std::vector<Elt> v(out.basis.row(int(head)), out.basis.row(int(head)) + n);
        for (size_t g = 0; g < M.gens.size(); g++) {
            const Mat& mg = M.gens[g];
            std::vector<Elt> u(n, 0);
            for (int i = 0; i < n; i++) {
                if (!v[i]) continue;
                const Elt* mr = mg.row(i);
                for (int j = 0; j < n; j++)
                    if (mr[j]) u[j] = F.add(u[j], F.mul(v[i], mr[j]));
            }
            try_add(u, int(head), int(g));
        }
        head++;
    }
    return out;
}

}  // namespace

bool certify_irreducible(const GModule& M, uint64_t seed, PeakWitness& witness, gmod::Submodule& sub,
                         std::vector<std::string>* transcript) {
    const Field& F = *M.F;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    if (M.dim == 0) throw PreconditionViolated("certify_irreducible on zero module");

    auto note = [&](const std::string& s) {
        if (transcript) transcript->push_back(s);
    };

    std::vector<Mat> transposed;
    for (const auto& g : M.gens) transposed.push_back(g.transpose());

    for (int attempt = 0; attempt < 80; attempt++) {
        AlgebraWord theta = random_word(rng, F.p, int(M.gens.size()));
        Mat A = theta.evaluate(M);
        poly::Poly mp = poly::order_polynomial(A, random_vector(rng, F, M.dim));
        if (mp.deg() < 1) continue;
        auto facs = poly::factor(mp, rng);
        for (auto& [f, mult] : facs) {
            Mat FA = poly::eval_at_matrix(f, A);
            // row-vector convention: module kernel vectors satisfy v*f(A) = 0
            Mat K = ff::left_kernel_basis(FA);
            if (K.rows == 0) continue;  // cannot happen for factors of the order polynomial
            for (int r = 0; r < K.rows; r++) {
                Mat seedrow(F, 1, M.dim);
                for (int j = 0; j < M.dim; j++) seedrow.at(0, j) = K.at(r, j);
                gmod::Submodule W = gmod::spin(M, seedrow);
                if (W.dim() < M.dim) {
                    note("split: word " + theta.to_string() + ", factor deg " + std::to_string(f.deg()) +
                         ", submodule dim " + std::to_string(W.dim()));
                    sub = std::move(W);
                    return false;
                }
            }
            if (K.rows == f.deg()) {
                // Norton's test on the dual side: kernel vectors of the
                // transposed action satisfy f(A) * w^T = 0.
                Mat KT = ff::kernel_basis(FA);
                std::vector<Elt> w(KT.row(0), KT.row(0) + M.dim);
                gmod::Submodule U = spin_with_matrices(F, transposed, w);
                if (U.dim() < M.dim) {
                    // orthogonal complement is a proper submodule
                    Mat C = ff::kernel_basis(U.basis);
                    gmod::Submodule W;
                    W.basis = C;
                    ff::rref(W.basis, &W.pivots);
                    note("split via dual test: submodule dim " + std::to_string(W.dim()));
                    sub = std::move(W);
                    return false;
                }
                witness.word = theta;
                witness.field_p = F.p;
                witness.field_k = F.k;
                witness.factor_coeffs.clear();
                for (Elt c : f.c) witness.factor_coeffs.push_back(int(c));
                note("irreducible: word " + theta.to_string() + ", factor deg " + std::to_string(f.deg()));
                return true;
            }
        }
    }
    throw Error("certify_irreducible: no certificate after 80 attempts (dim " + std::to_string(M.dim) + ")");
}

std::vector<Mat> homs_from_simple(const GModule& S, const PeakWitness& pw, const GModule& M) {
    if (!S.compatible(M)) throw IncompatibleModules("homs_from_simple: group or field mismatch");
    const Field& F = *S.F;
    Mat AS = pw.word.evaluate(S);
    poly::Poly f = pw.factor(F);
    Mat FS = poly::eval_at_matrix(f, AS);
    Mat KS = ff::left_kernel_basis(FS);
    if (KS.rows == 0) throw PreconditionViolated("homs_from_simple: stale witness");
    std::vector<Elt> v(KS.row(0), KS.row(0) + S.dim);
    SpinSchedule sched = standard_spin(S, v);
    if (sched.basis.rows != S.dim) throw PreconditionViolated("homs_from_simple: seed does not generate the module");

    Mat AM = pw.word.evaluate(M);
    Mat FM = poly::eval_at_matrix(f, AM);
    Mat KM = ff::left_kernel_basis(FM);
    if (KM.rows == 0) return {};

    // Candidate images of the schedule for each kernel basis vector.
    int r = S.dim;
    std::vector<std::vector<std::vector<Elt>>> images(KM.rows);
    auto apply = [&](const std::vector<Elt>& x, const Mat& g) {
        std::vector<Elt> u(M.dim, 0);
        for (int i = 0; i < M.dim; i++) {
            if (!x[i]) continue;
            const Elt* mr = g.row(i);
            for (int j = 0; j < M.dim; j++)
                if (mr[j]) u[j] = F.add(u[j], F.mul(x[i], mr[j]));
        }
        return u;
    };
    for (int t = 0; t < KM.rows; t++) {
        auto& im = images[t];
        im.resize(size_t(r));
        im[0] = std::vector<Elt>(KM.row(t), KM.row(t) + M.dim);
        for (int i = 1; i < r; i++) im[size_t(i)] = apply(im[size_t(sched.parent[i])], M.gens[sched.gidx[i]]);
    }
    // Defect of each candidate on each relation; valid combinations form the
    // kernel of the stacked defect matrix.
    int defect_len = int(sched.relations.size()) * M.dim;
    Mat D(F, KM.rows, std::max(defect_len, 1));
    for (int t = 0; t < KM.rows; t++) {
        int base = 0;
        for (const auto& rel : sched.relations) {
            auto lhs = apply(images[t][size_t(rel.src)], M.gens[rel.g]);
            for (size_t j = 0; j < rel.coeffs.size(); j++) {
                if (!rel.coeffs[j]) continue;
                for (int c = 0; c < M.dim; c++)
                    lhs[c] = F.sub(lhs[c], F.mul(rel.coeffs[j], images[t][j][c]));
            }
            for (int c = 0; c < M.dim; c++) D.at(t, base + c) = lhs[c];
            base += M.dim;
        }
    }
    Mat lam = ff::left_kernel_basis(D);  // rows: valid lambda combinations
    std::vector<Mat> out;
    if (lam.rows == 0) return out;
    Mat Binv = ff::inverse(sched.basis);
    for (int s = 0; s < lam.rows; s++) {
        Mat Im(F, r, M.dim);
        for (int t = 0; t < KM.rows; t++) {
            Elt c = lam.at(s, t);
            if (!c) continue;
            for (int i = 0; i < r; i++)
                for (int j = 0; j < M.dim; j++) Im.at(i, j) = F.add(Im.at(i, j), F.mul(c, images[t][size_t(i)][j]));
        }
        out.push_back(ff::mul(Binv, Im));
    }
    return out;
}

bool is_isomorphic(const GModule& S, const PeakWitness& wS, const GModule& T) {
    if (S.dim != T.dim || !S.compatible(T)) return false;
    return !homs_from_simple(S, wS, T).empty();
}

bool is_isomorphic(const GModule& S, const GModule& T) {
    if (S.dim != T.dim || !S.compatible(T)) return false;
    PeakWitness w;
    gmod::Submodule sub;
    if (!certify_irreducible(S, 7, w, sub)) throw PreconditionViolated("is_isomorphic: first argument reducible");
    return is_isomorphic(S, w, T);
}

int endomorphism_dim(const GModule& S, const PeakWitness& w) { return int(homs_from_simple(S, w, S).size()); }

namespace {

void chop_rec(const GModule& M, std::mt19937_64& rng, std::vector<std::pair<GModule, PeakWitness>>& leaves,
              std::vector<std::string>& transcript) {
    if (M.dim == 0) return;
    PeakWitness w;
    gmod::Submodule sub;
    if (certify_irreducible(M, rng(), w, sub, &transcript)) {
        int e = endomorphism_dim(M, w);
        if (e == 1) {
            leaves.push_back({M, w});
            return;
        }
        // Not absolutely irreducible: extend scalars to the endomorphism
        // field and split there.
        const Field& big = Field::get(M.F->p, M.F->k * e);
        transcript.push_back("endomorphism field degree " + std::to_string(e) + ": extending to GF(" + big.name() +
                             ")");
        chop_rec(gmod::extend_scalars(M, big), rng, leaves, transcript);
        return;
    }
    GModule S = gmod::sub_action(M, sub);
    GModule Q = gmod::quotient_action(M, sub, nullptr);
    chop_rec(S, rng, leaves, transcript);
    chop_rec(Q, rng, leaves, transcript);
}

}  // namespace

ChopResult chop(const GModule& M, uint64_t seed) {
    std::mt19937_64 rng(seed);
    ChopResult res;
    res.input_dim = M.dim;
    std::vector<std::pair<GModule, PeakWitness>> leaves;
    chop_rec(M, rng, leaves, res.transcript);

    // Unify fields (an extension may have been introduced partway).
    int kmax = 1;
    for (auto& [mod, w] : leaves) kmax = int(std::lcm(kmax, mod.F->k));
    for (auto& [mod, w] : leaves) {
        if (mod.F->k != kmax) {
            const Field& big = Field::get(mod.F->p, kmax);
            mod = gmod::extend_scalars(mod, big);
            gmod::Submodule dummy;
            PeakWitness w2;
            if (!certify_irreducible(mod, seed ^ 0xabcdef, w2, dummy))
                throw Error("chop: absolutely irreducible factor split after field extension");
            w = w2;
        }
    }
    // Group by isomorphism.
    for (auto& [mod, w] : leaves) {
        bool matched = false;
        for (auto& fac : res.factors) {
            if (fac.module.dim == mod.dim && is_isomorphic(fac.module, fac.witness, mod)) {
                fac.multiplicity++;
                matched = true;
                break;
            }
        }
        if (!matched) res.factors.push_back({mod, 1, w});
    }
    std::sort(res.factors.begin(), res.factors.end(),
              [](const ChopFactor& a, const ChopFactor& b) { return a.module.dim > b.module.dim; });
    return res;
}

poly::Cyclotomic FingerprintEntry::trace() const {
    std::vector<long long> a(eig_counts.begin(), eig_counts.end());
    return poly::cyclotomic_from_exponents(order, a);
}

bool Fingerprint::operator==(const Fingerprint& o) const {
    if (dim != o.dim || entries.size() != o.entries.size()) return false;
    for (size_t i = 0; i < entries.size(); i++) {
        if (entries[i].class_id != o.entries[i].class_id || entries[i].eig_counts != o.entries[i].eig_counts)
            return false;
    }
    return true;
}

std::string Fingerprint::to_string() const {
    std::string s = "dim=" + std::to_string(dim);
    for (const auto& e : entries) {
        s += " " + e.class_id + ":";
        for (size_t j = 0; j < e.eig_counts.size(); j++) {
            if (j) s += ".";
            s += std::to_string(e.eig_counts[j]);
        }
    }
    return s;
}

Fingerprint fingerprint(const GModule& S, const std::vector<perms::ClassRep>& classes) {
    const Field& F = *S.F;
    Fingerprint fp;
    fp.dim = S.dim;
    for (const auto& cls : classes) {
        if (cls.order % F.p == 0)
            throw PreconditionViolated("fingerprint: class order divisible by the characteristic");
        // need m | p^K - 1 with k | K
        int m = cls.order;
        int e = 1;
        {
            long long pe = F.q % m;
            while (pe != 1 % m) {
                pe = (pe * F.q) % m;
                e++;
                if (e > 12) throw Error("fingerprint: cannot reach cyclotomic field");
            }
        }
        const Field& big = Field::get(F.p, F.k * e);
        GModule SB = (e == 1) ? S : gmod::extend_scalars(S, big);
        Mat A = SB.act(cls.rep);
        const Field& BF = *SB.F;
        Elt omega = BF.exp((BF.q - 1) / m);
        FingerprintEntry entry;
        entry.class_id = cls.id;
        entry.order = m;
        int total = 0;
        for (int j = 0; j < m; j++) {
            Mat D = A;
            Elt ev = BF.pow(omega, j);
            for (int i = 0; i < D.rows; i++) D.at(i, i) = BF.sub(D.at(i, i), ev);
            int nullity = S.dim - ff::rank(D);
            entry.eig_counts.push_back(nullity);
            total += nullity;
        }
        if (total != S.dim)
            throw Error("fingerprint: eigenvalue multiplicities do not sum to dim (class " + cls.id + ")");
        fp.entries.push_back(std::move(entry));
    }
    return fp;
}

std::vector<std::pair<int, int>> jordan_partition(const GModule& M, const perms::Perm& g) {
    const Field& F = *M.F;
    int ord = g.order();
    {
        int o = ord;
        while (o % F.p == 0) o /= F.p;
        if (o != 1) throw PreconditionViolated("jordan_partition: element order is not a power of the characteristic");
    }
    Mat B = M.act(g);
    for (int i = 0; i < M.dim; i++) B.at(i, i) = F.sub(B.at(i, i), 1);
    std::vector<int> r;
    r.push_back(M.dim);
    Mat cur = B;
    while (true) {
        int rk = ff::rank(cur);
        r.push_back(rk);
        if (rk == 0) break;
        cur = ff::mul(cur, B);
        if (int(r.size()) > ord + 2) throw Error("jordan_partition: rank sequence failed to terminate");
    }
    while (int(r.size()) < ord + 2) r.push_back(0);
    std::vector<std::pair<int, int>> blocks;  // (size, count), descending
    for (int s = ord; s >= 1; s--) {
        int mult = r[size_t(s - 1)] - 2 * r[size_t(s)] + r[size_t(s + 1)];
        if (mult < 0) throw Error("jordan_partition: negative multiplicity");
        if (mult > 0) blocks.push_back({s, mult});
    }
    return blocks;
}

HomOracle generic_hom_oracle() {
    return [](const GModule& S, const GModule& M) { return gmod::hom_space(S, M); };
}

}  // namespace altsieve::mtx
