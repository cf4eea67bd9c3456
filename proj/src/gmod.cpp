#include "altsieve/gmod.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace altsieve::gmod {

Mat GModule::act(const perms::Perm& g) const {
    const auto& word = group->element_word(g);
    Mat r = Mat::identity(*F, dim);
    std::vector<Mat> inv_cache(2);
    for (int letter : word) {
        if (letter < 2) {
            r = ff::mul(r, gens[letter]);
        } else {
            int i = letter - 2;
            if (inv_cache[i].rows == 0) inv_cache[i] = ff::inverse(gens[i]);
            r = ff::mul(r, inv_cache[i]);
        }
    }
    return r;
}

void validate(const GModule& M) {
    if (int(M.gens.size()) != int(M.group->generators.size())) throw PreconditionViolated("generator count mismatch");
    for (size_t i = 0; i < M.gens.size(); i++) {
        const Mat& g = M.gens[i];
        if (g.rows != M.dim || g.cols != M.dim) throw PreconditionViolated("generator matrix shape mismatch");
        int ord = M.group->generators[i].order();
        Mat p = ff::mat_pow(g, ord);
        if (!(p == Mat::identity(*M.F, M.dim)))
            throw PreconditionViolated("generator matrix order does not divide permutation order");
    }
}

namespace {

GModule from_action_tables(perms::GroupPtr G, const Field& F, const std::vector<std::vector<int>>& tables,
                           const std::string& name) {
    GModule M;
    M.group = G;
    M.F = &F;
    M.dim = tables.empty() ? 0 : int(tables[0].size());
    for (const auto& t : tables) {
        Mat m(F, M.dim, M.dim);
        for (int i = 0; i < M.dim; i++) m.at(i, t[i]) = 1;
        M.gens.push_back(std::move(m));
    }
    M.name = name;
    return M;
}

}  // namespace

GModule perm_module(int n, const Field& F) {
    auto G = perms::alt_group(n);
    std::vector<std::vector<int>> tables;
    for (const auto& g : G->generators) tables.push_back(g.img);
    return from_action_tables(G, F, tables, "perm(" + std::to_string(n) + ")");
}

GModule perm_module_from_tables(perms::GroupPtr G, const std::vector<std::vector<int>>& tables, const Field& F,
                                const std::string& name) {
    return from_action_tables(G, F, tables, name);
}

GModule perm_module_on_subsets(int n, int k, const Field& F) {
    auto G = perms::alt_group(n);
    auto subsets = perms::k_subsets(n, k);
    std::vector<std::vector<int>> tables;
    for (const auto& g : G->generators) tables.push_back(perms::subset_action(g, subsets));
    return from_action_tables(G, F, tables, "perm(" + std::to_string(n) + " choose " + std::to_string(k) + ")");
}

GModule perm_module_on_flags(int n, int k, const Field& F) {
    auto G = perms::alt_group(n);
    auto fs = perms::subset_point_flags(n, k);
    std::vector<std::vector<int>> tables;
    for (const auto& g : G->generators) tables.push_back(perms::flag_action(g, fs));
    return from_action_tables(G, F, tables,
                              "perm(" + std::to_string(n) + ";" + std::to_string(k) + "-set,pt)");
}

GModule dual(const GModule& M) {
    GModule D;
    D.group = M.group;
    D.F = M.F;
    D.dim = M.dim;
    for (const auto& g : M.gens) D.gens.push_back(ff::inverse(g).transpose());
    D.name = M.name + "*";
    return D;
}

GModule tensor(const GModule& M, const GModule& N) {
    if (!M.compatible(N)) throw IncompatibleModules("tensor: group or field mismatch");
    GModule T;
    T.group = M.group;
    T.F = M.F;
    T.dim = M.dim * N.dim;
    for (size_t i = 0; i < M.gens.size(); i++) T.gens.push_back(ff::kron(M.gens[i], N.gens[i]));
    T.name = "(" + M.name + ")x(" + N.name + ")";
    return T;
}

GModule ext_square(const GModule& M) {
    const Field& F = *M.F;
    int n = M.dim;
    int d = n * (n - 1) / 2;
    // wedge basis e_i ^ e_j for i < j, ordered lexicographically
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> idx(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++) {
            idx[i][j] = int(pairs.size());
            pairs.push_back({i, j});
        }
    GModule W;
    W.group = M.group;
    W.F = M.F;
    W.dim = d;
    for (const auto& g : M.gens) {
        Mat w(F, d, d);
        for (int r = 0; r < d; r++) {
            auto [i, j] = pairs[r];
            const Elt* gi = g.row(i);
            const Elt* gj = g.row(j);
            for (int a = 0; a < n; a++) {
                if (!gi[a]) continue;
                for (int b = 0; b < n; b++) {
                    if (a == b || !gj[b]) continue;
                    Elt c = F.mul(gi[a], gj[b]);
                    if (a < b) w.at(r, idx[a][b]) = F.add(w.at(r, idx[a][b]), c);
                    else w.at(r, idx[b][a]) = F.sub(w.at(r, idx[b][a]), c);
                }
            }
        }
        W.gens.push_back(std::move(w));
    }
    W.name = "L2(" + M.name + ")";
    return W;
}

GModule direct_sum(const GModule& M, const GModule& N) {
    if (!M.compatible(N)) throw IncompatibleModules("direct_sum: group or field mismatch");
    GModule S;
    S.group = M.group;
    S.F = M.F;
    S.dim = M.dim + N.dim;
    for (size_t i = 0; i < M.gens.size(); i++) {
        Mat m(*M.F, S.dim, S.dim);
        for (int r = 0; r < M.dim; r++)
            for (int c = 0; c < M.dim; c++) m.at(r, c) = M.gens[i].at(r, c);
        for (int r = 0; r < N.dim; r++)
            for (int c = 0; c < N.dim; c++) m.at(M.dim + r, M.dim + c) = N.gens[i].at(r, c);
        S.gens.push_back(std::move(m));
    }
    S.name = M.name + "+" + N.name;
    return S;
}

GModule direct_sum_power(const GModule& M, int copies) {
    if (copies < 1) throw PreconditionViolated("direct_sum_power needs copies >= 1");
    GModule S = M;
    for (int i = 1; i < copies; i++) S = direct_sum(S, M);
    S.name = M.name + "^+" + std::to_string(copies);
    return S;
}

GModule restrict_along(const GModule& M, const perms::SubgroupEmbedding& e) {
    if (e.ambient->n != M.group->n) throw IncompatibleModules("restrict: embedding ambient mismatch");
    GModule R;
    R.group = e.sub;
    R.F = M.F;
    R.dim = M.dim;
    for (const auto& img : e.images) R.gens.push_back(M.act(img));
    R.name = M.name + "|alt" + std::to_string(e.sub->n);
    return R;
}

GModule extend_scalars(const GModule& M, const Field& big) {
    GModule E;
    E.group = M.group;
    E.F = &big;
    E.dim = M.dim;
    for (const auto& g : M.gens) E.gens.push_back(ff::extend_scalars(g, big));
    E.name = M.name + "@" + big.name();
    return E;
}

std::vector<Mat> hom_space(const GModule& M, const GModule& N) {
    if (!M.compatible(N)) throw IncompatibleModules("hom_space: group or field mismatch");
    const Field& F = *M.F;
    int dm = M.dim, dn = N.dim;
    if (dm == 0 || dn == 0) return {};
    // Solve rho_M(g) X = X rho_N(g) for all generators; row-major vec(X).
    Mat sys(F, int(M.gens.size()) * dm * dn, dm * dn);
    int base = 0;
    for (size_t t = 0; t < M.gens.size(); t++) {
        const Mat& A = M.gens[t];
        const Mat& B = N.gens[t];
        // (A ⊗ I - I ⊗ B^T) vec(X) = 0
        for (int i = 0; i < dm; i++)
            for (int j = 0; j < dn; j++) {
                int r = base + i * dn + j;
                for (int k = 0; k < dm; k++)
                    if (A.at(i, k)) sys.at(r, k * dn + j) = A.at(i, k);
                for (int k = 0; k < dn; k++)
                    if (B.at(k, j)) sys.at(r, i * dn + k) = F.sub(sys.at(r, i * dn + k), B.at(k, j));
            }
        base += dm * dn;
    }
    Mat K = ff::kernel_basis(sys);
    std::vector<Mat> out;
    for (int r = 0; r < K.rows; r++) {
        Mat X(F, dm, dn);
        for (int i = 0; i < dm; i++)
            for (int j = 0; j < dn; j++) X.at(i, j) = K.at(r, i * dn + j);
        out.push_back(std::move(X));
    }
    return out;
}

namespace {

// Insert v into the echelon basis; returns true if the basis grew.
bool echelon_insert(Submodule& W, std::vector<Elt> v, const Field& F) {
    for (int r = 0; r < W.basis.rows; r++) {
        Elt lead = v[W.pivots[r]];
        if (lead) {
            const Elt* br = W.basis.row(r);
            for (int j = 0; j < W.basis.cols; j++) v[j] = F.sub(v[j], F.mul(lead, br[j]));
        }
    }
    int pc = -1;
    for (int j = 0; j < W.basis.cols; j++)
        if (v[j]) {
            pc = j;
            break;
        }
    if (pc < 0) return false;
    Elt il = F.inv(v[pc]);
    for (auto& x : v) x = F.mul(x, il);
    // back-substitute to keep reduced form
    Mat grown(F, W.basis.rows + 1, W.basis.cols);
    std::copy(W.basis.a.begin(), W.basis.a.end(), grown.a.begin());
    for (int j = 0; j < W.basis.cols; j++) grown.at(W.basis.rows, j) = v[j];
    for (int r = 0; r < W.basis.rows; r++) {
        Elt c = grown.at(r, pc);
        if (c) {
            for (int j = 0; j < W.basis.cols; j++)
                grown.at(r, j) = F.sub(grown.at(r, j), F.mul(c, grown.at(W.basis.rows, j)));
        }
    }
    // keep rows sorted by pivot column
    std::vector<int> pivots = W.pivots;
    pivots.push_back(pc);
    std::vector<int> order(pivots.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return pivots[a] < pivots[b]; });
    Mat sorted(F, grown.rows, grown.cols);
    std::vector<int> sorted_piv;
    for (size_t i = 0; i < order.size(); i++) {
        for (int j = 0; j < grown.cols; j++) sorted.at(int(i), j) = grown.at(order[i], j);
        sorted_piv.push_back(pivots[order[i]]);
    }
    W.basis = std::move(sorted);
    W.pivots = std::move(sorted_piv);
    return true;
}

std::vector<Elt> row_times(const std::vector<Elt>& v, const Mat& M) {
    const Field& F = *M.F;
    std::vector<Elt> out(M.cols, 0);
    for (int i = 0; i < M.rows; i++) {
        if (!v[i]) continue;
        const Elt* mr = M.row(i);
        for (int j = 0; j < M.cols; j++)
            if (mr[j]) out[j] = F.add(out[j], F.mul(v[i], mr[j]));
    }
    return out;
}

}  // namespace

Submodule submodule_intersection(const Submodule& A, const Submodule& B) {
    const Field& F = *A.basis.F;
    int n = A.basis.cols;
    // rows (x | y) with x*A - y*B = 0; the intersection is spanned by x*A
    Mat stacked(F, A.basis.rows + B.basis.rows, n);
    for (int i = 0; i < A.basis.rows; i++)
        for (int j = 0; j < n; j++) stacked.at(i, j) = A.basis.at(i, j);
    for (int i = 0; i < B.basis.rows; i++)
        for (int j = 0; j < n; j++) stacked.at(A.basis.rows + i, j) = F.neg(B.basis.at(i, j));
    Mat K = ff::left_kernel_basis(stacked);
    Mat span(F, K.rows, n);
    for (int r = 0; r < K.rows; r++)
        for (int j = 0; j < n; j++) {
            Elt acc = 0;
            for (int i = 0; i < A.basis.rows; i++)
                if (K.at(r, i)) acc = F.add(acc, F.mul(K.at(r, i), A.basis.at(i, j)));
            span.at(r, j) = acc;
        }
    Submodule W;
    W.basis = span;
    int rank = ff::rref(W.basis, &W.pivots);
    Mat trimmed(F, rank, n);
    for (int r = 0; r < rank; r++)
        for (int j = 0; j < n; j++) trimmed.at(r, j) = W.basis.at(r, j);
    W.basis = std::move(trimmed);
    return W;
}

std::vector<Elt> reduce_row(const Submodule& W, std::vector<Elt> v) {
    const Field& F = *W.basis.F;
    for (int r = 0; r < W.basis.rows; r++) {
        Elt lead = v[W.pivots[r]];
        if (lead) {
            const Elt* br = W.basis.row(r);
            for (size_t j = 0; j < v.size(); j++) v[j] = F.sub(v[j], F.mul(lead, br[j]));
        }
    }
    return v;
}

bool contains(const Submodule& W, const std::vector<Elt>& v) {
    auto r = reduce_row(W, v);
    return std::all_of(r.begin(), r.end(), [](Elt x) { return x == 0; });
}

Submodule spin(const GModule& M, const Mat& seeds) {
    const Field& F = *M.F;
    Submodule W;
    W.basis = Mat(F, 0, M.dim);
    std::vector<std::vector<Elt>> queue;
    for (int r = 0; r < seeds.rows; r++) {
        std::vector<Elt> v(seeds.row(r), seeds.row(r) + seeds.cols);
        if (echelon_insert(W, v, F)) queue.push_back(v);
    }
    // Re-fetch inserted rows from the basis copies in the queue: multiply by
    // each generator, insert, repeat until closure.
    size_t head = 0;
    while (head < queue.size()) {
        std::vector<Elt> v = queue[head++];
        for (const auto& g : M.gens) {
            auto w = row_times(v, g);
            if (echelon_insert(W, w, F)) queue.push_back(w);
        }
    }
    return W;
}

Submodule whole_module(const GModule& M) {
    Submodule W;
    W.basis = Mat::identity(*M.F, M.dim);
    W.pivots.resize(M.dim);
    for (int i = 0; i < M.dim; i++) W.pivots[i] = i;
    return W;
}

GModule sub_action(const GModule& M, const Submodule& W) {
    const Field& F = *M.F;
    GModule S;
    S.group = M.group;
    S.F = M.F;
    S.dim = W.dim();
    for (const auto& g : M.gens) {
        Mat act(F, S.dim, S.dim);
        for (int r = 0; r < W.basis.rows; r++) {
            std::vector<Elt> v(W.basis.row(r), W.basis.row(r) + W.basis.cols);
            auto w = row_times(v, g);
            // express w in the echelon basis: coefficients are read off pivots
            for (int t = 0; t < W.basis.rows; t++) {
                Elt c = w[W.pivots[t]];
                if (c) {
                    act.at(r, t) = c;
                    const Elt* br = W.basis.row(t);
                    for (size_t j = 0; j < w.size(); j++) w[j] = F.sub(w[j], F.mul(c, br[j]));
                }
            }
            if (!std::all_of(w.begin(), w.end(), [](Elt x) { return x == 0; }))
                throw PreconditionViolated("sub_action: basis does not span a submodule");
        }
        S.gens.push_back(std::move(act));
    }
    S.name = "sub" + std::to_string(S.dim) + "(" + M.name + ")";
    return S;
}

GModule quotient_action(const GModule& M, const Submodule& W, std::vector<int>* complement_cols) {
    const Field& F = *M.F;
    std::vector<bool> is_pivot(M.dim, false);
    for (int p : W.pivots) is_pivot[p] = true;
    std::vector<int> comp;
    for (int j = 0; j < M.dim; j++)
        if (!is_pivot[j]) comp.push_back(j);
    if (complement_cols) *complement_cols = comp;
    GModule Q;
    Q.group = M.group;
    Q.F = M.F;
    Q.dim = int(comp.size());
    for (const auto& g : M.gens) {
        Mat act(F, Q.dim, Q.dim);
        for (int r = 0; r < Q.dim; r++) {
            std::vector<Elt> v(M.dim, 0);
            v[comp[r]] = 1;
            auto w = reduce_row(W, row_times(v, g));
            for (int t = 0; t < Q.dim; t++) act.at(r, t) = w[comp[t]];
        }
        Q.gens.push_back(std::move(act));
    }
    Q.name = "quo" + std::to_string(Q.dim) + "(" + M.name + ")";
    return Q;
}

Submodule socle_wrt(const GModule& M, const std::vector<const GModule*>& simples) {
    const Field& F = *M.F;
    Submodule W;
    W.basis = Mat(F, 0, M.dim);
    for (const GModule* S : simples) {
        if (S->dim > M.dim) continue;
        auto homs = hom_space(*S, M);
        for (const auto& X : homs)
            for (int r = 0; r < X.rows; r++) {
                std::vector<Elt> v(X.row(r), X.row(r) + X.cols);
                echelon_insert(W, v, F);
            }
    }
    return W;
}

Submodule radical_wrt(const GModule& M, const std::vector<const GModule*>& simples) {
    const Field& F = *M.F;
    Submodule W = socle_wrt(M, simples);
    while (W.dim() < M.dim) {
        std::vector<int> comp;
        GModule Q = quotient_action(M, W, &comp);
        Submodule QW = socle_wrt(Q, simples);
        if (QW.dim() == 0) break;
        Submodule grown = W;
        for (int r = 0; r < QW.basis.rows; r++) {
            std::vector<Elt> lift(M.dim, 0);
            for (int t = 0; t < Q.dim; t++) lift[comp[t]] = QW.basis.at(r, t);
            echelon_insert(grown, lift, F);
        }
        if (grown.dim() == W.dim()) break;
        W = std::move(grown);
    }
    return W;
}

Submodule residual_wrt(const GModule& M, const std::vector<const GModule*>& simples) {
    // Smallest W with cf(M/W) contained in `simples`: compute on the dual.
    GModule D = dual(M);
    std::vector<GModule> dual_simples;
    dual_simples.reserve(simples.size());
    for (const GModule* S : simples) dual_simples.push_back(dual(*S));
    std::vector<const GModule*> ptrs;
    for (const auto& S : dual_simples) ptrs.push_back(&S);
    Submodule R = radical_wrt(D, ptrs);
    if (R.dim() == 0) return whole_module(M);
    Mat K = ff::kernel_basis(R.basis);  // rows v with R * v^T = 0
    Submodule W;
    W.basis = Mat(*M.F, 0, M.dim);
    for (int r = 0; r < K.rows; r++) {
        std::vector<Elt> v(K.row(r), K.row(r) + K.cols);
        echelon_insert(W, v, *M.F);
    }
    return W;
}

Mat fixed_vectors(const GModule& M) {
    const Field& F = *M.F;
    // v (rho(g) - 1) = 0 for all generators
    Mat sys(F, M.dim, int(M.gens.size()) * M.dim);
    for (size_t t = 0; t < M.gens.size(); t++) {
        const Mat& g = M.gens[t];
        for (int i = 0; i < M.dim; i++)
            for (int j = 0; j < M.dim; j++) {
                Elt v = g.at(i, j);
                if (i == j) v = F.sub(v, 1);
                sys.at(i, int(t) * M.dim + j) = v;
            }
    }
    return ff::left_kernel_basis(sys);
}

std::string save_text(const GModule& M) {
    std::ostringstream out;
    out << "group=alt" << M.group->n << " field=" << M.F->p << "^" << M.F->k << " dim=" << M.dim << "\n";
    for (const auto& g : M.gens) {
        for (int i = 0; i < M.dim; i++) {
            for (int j = 0; j < M.dim; j++) {
                if (j) out << " ";
                out << int(g.at(i, j));
            }
            out << "\n";
        }
    }
    return out.str();
}

GModule load_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty module file", 1);
    int n = 0, p = 0, k = 0, dim = -1;
    for (const auto& tok : util::split(header, ' ')) {
        auto kv = util::split(tok, '=');
        if (kv.size() != 2) throw ParseError("bad header token '" + tok + "'", 1);
        if (kv[0] == "group") {
            if (kv[1].substr(0, 3) != "alt") throw ParseError("unknown group '" + kv[1] + "'", 1);
            n = int(util::parse_int(kv[1].substr(3), 1));
        } else if (kv[0] == "field") {
            auto pk = util::split(kv[1], '^');
            p = int(util::parse_int(pk[0], 1));
            k = pk.size() > 1 ? int(util::parse_int(pk[1], 1)) : 1;
        } else if (kv[0] == "dim") {
            dim = int(util::parse_int(kv[1], 1));
        }
    }
    if (n == 0 || p == 0 || dim < 0) throw ParseError("incomplete module header", 1);
    GModule M;
    M.group = perms::alt_group(n);
    M.F = &Field::get(p, k);
    M.dim = dim;
    int line_no = 1;
    for (size_t gi = 0; gi < M.group->generators.size(); gi++) {
        Mat m(*M.F, dim, dim);
        for (int i = 0; i < dim; i++) {
            std::string line;
            do {
                if (!std::getline(in, line)) throw ParseError("unexpected end of module file", line_no);
                line_no++;
            } while (util::strip(line).empty());
            std::istringstream ls(line);
            for (int j = 0; j < dim; j++) {
                long long v;
                if (!(ls >> v)) throw ParseError("short matrix row", line_no);
                if (v < 0 || v >= M.F->q) throw ParseError("entry out of field range", line_no);
                m.at(i, j) = Elt(v);
            }
        }
        M.gens.push_back(std::move(m));
    }
    M.name = "loaded";
    validate(M);
    return M;
}

void save_file(const GModule& M, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << save_text(M);
}

GModule load_file(const std::string& path) { return load_text(util::read_file(path)); }

}  // namespace altsieve::gmod
