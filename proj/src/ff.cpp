#include "altsieve/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace altsieve::ff {

namespace {

// Conway polynomials (coeffs low->high) for every supported (p,k). The
// degree-6 entries exist only to host eigenvalue computations for elements
// whose order needs a bigger cyclotomic extension.
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> t = {
        {{2, 1}, {1, 1}},
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{3, 1}, {1, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
        {{5, 1}, {3, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{5, 4}, {2, 4, 4, 0, 1}},
        {{5, 6}, {2, 0, 1, 4, 1, 0, 1}},
        {{7, 1}, {4, 1}},
        {{7, 2}, {3, 6, 1}},
        {{7, 3}, {4, 0, 6, 1}},
        {{7, 4}, {3, 4, 5, 0, 1}},
    };
    return t;
}

std::vector<int> digits_of(int idx, int p, int k) {
    std::vector<int> d(k);
    for (int i = 0; i < k; i++) {
        d[i] = idx % p;
        idx /= p;
    }
    return d;
}

int index_of(const std::vector<int>& d, int p) {
    int idx = 0;
    for (int i = int(d.size()) - 1; i >= 0; i--) idx = idx * p + d[i];
    return idx;
}

// Multiply two elements in digit form modulo the defining polynomial.
std::vector<int> digit_mul(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& f, int p) {
    int k = int(f.size()) - 1;
    std::vector<int> r(2 * k - 1, 0);
    for (int i = 0; i < k; i++)
        if (a[i])
            for (int j = 0; j < k; j++) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (int i = 2 * k - 2; i >= k; i--) {
        int c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (int j = 0; j < k; j++) r[i - k + j] = ((r[i - k + j] - c * f[j]) % p + p) % p;
    }
    r.resize(k);
    return r;
}

}  // namespace

void Field::build(int pp, int kk, std::vector<int> coeffs) {
    p = pp;
    k = kk;
    conway = std::move(coeffs);
    q = 1;
    for (int i = 0; i < k; i++) q *= p;

    negt_.resize(q);
    for (int e = 0; e < q; e++) {
        auto d = digits_of(e, p, k);
        for (auto& x : d) x = (p - x) % p;
        negt_[e] = Elt(index_of(d, p));
    }

    // Fixed generator: the residue of x for k > 1, the root of the linear
    // Conway polynomial for k = 1.
    if (k == 1) gen = Elt((p - conway[0] % p) % p);
    else gen = Elt(p);  // digits (0,1,0,...) = x

    expt_.assign(size_t(2) * (q - 1), 0);
    logt_.assign(q, -1);
    std::vector<int> cur(k, 0);
    cur[0] = 1;
    std::vector<int> g = digits_of(gen, p, k);
    for (int i = 0; i < q - 1; i++) {
        Elt e = Elt(index_of(cur, p));
        expt_[i] = e;
        expt_[i + q - 1] = e;
        if (logt_[e] != -1) throw Error("field generator is not primitive for GF(" + std::to_string(q) + ")");
        logt_[e] = i;
        cur = digit_mul(cur, g, conway, p);
    }
    if (index_of(cur, p) != 1) throw Error("field generator order mismatch for GF(" + std::to_string(q) + ")");

    zech_.assign(q - 1, Elt(q - 1));
    for (int d = 0; d < q - 1; d++) {
        // digit arithmetic only: the Zech table is what add_slow relies on
        auto da = digits_of(1, p, k), db = digits_of(expt_[d], p, k);
        std::vector<int> ds(k);
        for (int i = 0; i < k; i++) ds[i] = (da[i] + db[i]) % p;
        Elt s = Elt(index_of(ds, p));
        zech_[d] = (s == 0) ? Elt(q - 1) : Elt(logt_[s]);
    }

    if (q <= kTableLimit) {
        addt_.assign(size_t(q) * q, 0);
        mult_.assign(size_t(q) * q, 0);
        for (int x = 0; x < q; x++) {
            auto dx = digits_of(x, p, k);
            for (int y = 0; y < q; y++) {
                auto dy = digits_of(y, p, k);
                std::vector<int> ds(k);
                for (int i = 0; i < k; i++) ds[i] = (dx[i] + dy[i]) % p;
                addt_[size_t(x) * q + y] = Elt(index_of(ds, p));
                mult_[size_t(x) * q + y] = (x && y) ? expt_[size_t(logt_[x]) + logt_[y]] : 0;
            }
        }
    }
}

Elt Field::add_slow(Elt a, Elt b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    if (!zech_.empty()) {
        int la = logt_[a], lb = logt_[b];
        int d = lb - la;
        if (d < 0) d += q - 1;
        Elt z = zech_[d];
        if (z == Elt(q - 1)) return 0;
        return expt_[size_t(la) + z];
    }
    // During table construction zech_ is not yet available.
    auto da = digits_of(a, p, k), db = digits_of(b, p, k);
    std::vector<int> ds(k);
    for (int i = 0; i < k; i++) ds[i] = (da[i] + db[i]) % p;
    return Elt(index_of(ds, p));
}

Elt Field::pow(Elt a, long long e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw PreconditionViolated("0^negative");
        return 0;
    }
    long long m = (long long)(logt_[a]) * (e % (q - 1));
    m %= (q - 1);
    if (m < 0) m += q - 1;
    return expt_[m];
}

int Field::order(Elt a) const {
    if (a == 0) throw PreconditionViolated("order of zero");
    int l = logt_[a];
    if (l == 0) return 1;
    int n = q - 1;
    int g = std::gcd(l, n);
    return n / g;
}

Elt Field::embed_generator(const Field& sub) const {
    if (sub.p != p || k % sub.k != 0) throw UnsupportedField("not a subfield: GF(" + sub.name() + ") in GF(" + name() + ")");
    if (sub.k == k) return gen;
    long long e = (long long)(q - 1) / (sub.q - 1);
    Elt cand = exp(e);
    // Verify the norm-compatible choice satisfies the subfield's defining
    // polynomial, then it generates an honest field embedding.
    Elt acc = 0, pw = 1;
    for (int i = 0; i <= sub.k; i++) {
        acc = add(acc, mul(from_int(sub.conway[i]), pw));
        pw = mul(pw, cand);
    }
    if (acc != 0) throw Error("incompatible defining polynomials for subfield embedding");
    return cand;
}

std::vector<Elt> Field::embedding_table(const Field& sub) const {
    Elt g = embed_generator(sub);
    std::vector<Elt> t(sub.q, 0);
    t[1] = 1;
    Elt cur = 1;
    for (int i = 1; i < sub.q - 1; i++) {
        cur = mul(cur, g);
        t[sub.expt_[i]] = cur;
    }
    return t;
}

std::string Field::name() const { return std::to_string(p) + "^" + std::to_string(k); }

struct FieldRegistry {
    std::map<std::pair<int, int>, Field*> fields;
    std::mutex mtx;

    const Field& get(int p, int k) {
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(p, k);
        auto it = fields.find(key);
        if (it != fields.end()) return *it->second;
        auto ct = conway_table().find(key);
        if (ct == conway_table().end())
            throw UnsupportedField("unsupported field GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
        auto* f = new Field();
        f->build(p, k, ct->second);
        fields[key] = f;
        return *f;
    }
};

const Field& Field::get(int p, int k) {
    static FieldRegistry reg;
    return reg.get(p, k);
}

Mat Mat::identity(const Field& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

Mat Mat::random(const Field& f, int r, int c, std::mt19937_64& rng) {
    Mat m(f, r, c);
    for (auto& x : m.a) x = Elt(rng() % f.q);
    return m;
}

bool Mat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](Elt x) { return x == 0; });
}

Mat Mat::transpose() const {
    Mat t(*F, cols, rows);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < cols; j++) t.at(j, i) = at(i, j);
    return t;
}

void Mat::scale_row(int r, Elt s) {
    Elt* p = row(r);
    for (int j = 0; j < cols; j++) p[j] = F->mul(p[j], s);
}

void Mat::add_scaled_row(int dst, int src, Elt s) {
    if (s == 0) return;
    Elt* d = row(dst);
    const Elt* f = row(src);
    for (int j = 0; j < cols; j++) d[j] = F->add(d[j], F->mul(f[j], s));
}

namespace {

// ---- bit-packed GF(2) helpers -------------------------------------------

struct PackedGF2 {
    int rows, cols, wpr;  // words per row
    std::vector<uint64_t> w;
    PackedGF2(int r, int c) : rows(r), cols(c), wpr((c + 63) / 64), w(size_t(r) * wpr, 0) {}
    uint64_t* row(int r) { return w.data() + size_t(r) * wpr; }
    const uint64_t* row(int r) const { return w.data() + size_t(r) * wpr; }
    void set(int r, int c) { row(r)[c >> 6] |= (uint64_t(1) << (c & 63)); }
    bool get(int r, int c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }
};

PackedGF2 pack(const Mat& m) {
    PackedGF2 p(m.rows, m.cols);
    for (int i = 0; i < m.rows; i++) {
        const Elt* r = m.row(i);
        for (int j = 0; j < m.cols; j++)
            if (r[j]) p.set(i, j);
    }
    return p;
}

Mat unpack(const PackedGF2& p, const Field& F) {
    Mat m(F, p.rows, p.cols);
    for (int i = 0; i < p.rows; i++)
        for (int j = 0; j < p.cols; j++)
            if (p.get(i, j)) m.at(i, j) = 1;
    return m;
}

Mat mul_gf2(const Mat& A, const Mat& B, bool parallel) {
    PackedGF2 pb = pack(B);
    PackedGF2 pc(A.rows, B.cols);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && A.rows > 64)
#endif
    for (int i = 0; i < A.rows; i++) {
        uint64_t* dst = pc.row(i);
        const Elt* ar = A.row(i);
        for (int j = 0; j < A.cols; j++) {
            if (ar[j]) {
                const uint64_t* src = pb.row(j);
                for (int t = 0; t < pb.wpr; t++) dst[t] ^= src[t];
            }
        }
    }
    (void)parallel;
    return unpack(pc, *A.F);
}

int rref_gf2(Mat& M, std::vector<int>* pivots) {
    PackedGF2 pm = pack(M);
    int rank = 0;
    std::vector<int> piv;
    for (int col = 0; col < M.cols && rank < M.rows; col++) {
        int sel = -1;
        for (int i = rank; i < M.rows; i++)
            if (pm.get(i, col)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != rank)
            for (int t = 0; t < pm.wpr; t++) std::swap(pm.row(sel)[t], pm.row(rank)[t]);
        const uint64_t* pr = pm.row(rank);
        for (int i = 0; i < M.rows; i++) {
            if (i != rank && pm.get(i, col)) {
                uint64_t* ri = pm.row(i);
                for (int t = 0; t < pm.wpr; t++) ri[t] ^= pr[t];
            }
        }
        piv.push_back(col);
        rank++;
    }
    M = unpack(pm, *M.F);
    if (pivots) *pivots = piv;
    return rank;
}

Mat mul_generic(const Mat& A, const Mat& B, bool parallel) {
    const Field& F = *A.F;
    Mat C(F, A.rows, B.cols);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && A.rows > 32)
#endif
    for (int i = 0; i < A.rows; i++) {
        Elt* dst = C.row(i);
        const Elt* ar = A.row(i);
        for (int j = 0; j < A.cols; j++) {
            Elt s = ar[j];
            if (!s) continue;
            const Elt* br = B.row(j);
            for (int t = 0; t < B.cols; t++)
                if (br[t]) dst[t] = F.add(dst[t], F.mul(s, br[t]));
        }
    }
    (void)parallel;
    return C;
}

int rref_generic(Mat& M, std::vector<int>* pivots, bool parallel) {
    const Field& F = *M.F;
    int rank = 0;
    std::vector<int> piv;
    for (int col = 0; col < M.cols && rank < M.rows; col++) {
        int sel = -1;
        for (int i = rank; i < M.rows; i++)
            if (M.at(i, col)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != rank)
            for (int j = 0; j < M.cols; j++) std::swap(M.at(sel, j), M.at(rank, j));
        Elt pv = M.at(rank, col);
        if (pv != 1) M.scale_row(rank, F.inv(pv));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && M.rows > 128)
#endif
        for (int i = 0; i < M.rows; i++) {
            if (i != rank && M.at(i, col)) {
                Elt s = F.neg(M.at(i, col));
                M.add_scaled_row(i, rank, s);
            }
        }
        piv.push_back(col);
        rank++;
    }
    (void)parallel;
    if (pivots) *pivots = piv;
    return rank;
}

bool use_gf2(const Field& F) { return F.p == 2 && F.k == 1; }

}  // namespace

namespace kernels {

Mat mul_serial(const Mat& A, const Mat& B) {
    if (!A.F->same(*B.F) || A.cols != B.rows) throw PreconditionViolated("mul shape/field mismatch");
    if (use_gf2(*A.F)) return mul_gf2(A, B, false);
    return mul_generic(A, B, false);
}

Mat mul_parallel(const Mat& A, const Mat& B) {
    if (!A.F->same(*B.F) || A.cols != B.rows) throw PreconditionViolated("mul shape/field mismatch");
    if (use_gf2(*A.F)) return mul_gf2(A, B, true);
    return mul_generic(A, B, true);
}

int rref_serial(Mat& M) {
    if (use_gf2(*M.F)) return rref_gf2(M, nullptr);
    return rref_generic(M, nullptr, false);
}

int rref_parallel(Mat& M) {
    if (use_gf2(*M.F)) return rref_gf2(M, nullptr);
    return rref_generic(M, nullptr, true);
}

bool parallel_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace kernels

Mat mul(const Mat& A, const Mat& B) { return kernels::mul_parallel(A, B); }

Mat add(const Mat& A, const Mat& B) {
    if (!A.F->same(*B.F) || A.rows != B.rows || A.cols != B.cols) throw PreconditionViolated("add shape mismatch");
    Mat C = A;
    for (size_t i = 0; i < C.a.size(); i++) C.a[i] = A.F->add(C.a[i], B.a[i]);
    return C;
}

Mat sub(const Mat& A, const Mat& B) {
    if (!A.F->same(*B.F) || A.rows != B.rows || A.cols != B.cols) throw PreconditionViolated("sub shape mismatch");
    Mat C = A;
    for (size_t i = 0; i < C.a.size(); i++) C.a[i] = A.F->sub(C.a[i], B.a[i]);
    return C;
}

Mat scalar_mul(Elt s, const Mat& A) {
    Mat C = A;
    for (auto& x : C.a) x = A.F->mul(s, x);
    return C;
}

int rref(Mat& M, std::vector<int>* pivots) {
    if (use_gf2(*M.F)) return rref_gf2(M, pivots);
    return rref_generic(M, pivots, true);
}

int rank(const Mat& M) {
    Mat tmp = M;
    return rref(tmp);
}

Mat kernel_basis(const Mat& M) {
    // Solve M x = 0: run rref on the transpose and read off free columns.
    Mat T = M.transpose();  // rows index the x-coordinates
    // We need { x : M x = 0 } = left kernel of transpose(M)... work directly:
    // x^T M^T = 0, so x is in the left kernel of M^T = row space complement.
    return left_kernel_basis(T);
}

Mat left_kernel_basis(const Mat& M) {
    // Standard trick: reduce [M | I] and collect rows whose M-part vanished.
    const Field& F = *M.F;
    Mat aug(F, M.rows, M.cols + M.rows);
    for (int i = 0; i < M.rows; i++) {
        for (int j = 0; j < M.cols; j++) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols + i) = 1;
    }
    rref(aug);
    std::vector<int> zr;
    for (int i = 0; i < M.rows; i++) {
        bool zero = true;
        for (int j = 0; j < M.cols; j++)
            if (aug.at(i, j)) {
                zero = false;
                break;
            }
        if (zero) zr.push_back(i);
    }
    Mat K(F, int(zr.size()), M.rows);
    for (size_t t = 0; t < zr.size(); t++)
        for (int j = 0; j < M.rows; j++) K.at(int(t), j) = aug.at(zr[t], M.cols + j);
    return K;
}

Mat inverse(const Mat& M) {
    if (M.rows != M.cols) throw PreconditionViolated("inverse of non-square");
    const Field& F = *M.F;
    Mat aug(F, M.rows, 2 * M.cols);
    for (int i = 0; i < M.rows; i++) {
        for (int j = 0; j < M.cols; j++) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols + i) = 1;
    }
    int r = rref(aug);
    if (r != M.rows) throw PreconditionViolated("matrix not invertible");
    Mat inv(F, M.rows, M.cols);
    for (int i = 0; i < M.rows; i++)
        for (int j = 0; j < M.cols; j++) inv.at(i, j) = aug.at(i, M.cols + j);
    return inv;
}

Mat mat_pow(const Mat& M, long long e) {
    if (M.rows != M.cols) throw PreconditionViolated("pow of non-square");
    if (e < 0) return mat_pow(inverse(M), -e);
    Mat r = Mat::identity(*M.F, M.rows);
    Mat b = M;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Mat kron(const Mat& A, const Mat& B) {
    if (!A.F->same(*B.F)) throw PreconditionViolated("kron field mismatch");
    const Field& F = *A.F;
    Mat C(F, A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; i++)
        for (int j = 0; j < A.cols; j++) {
            Elt s = A.at(i, j);
            if (!s) continue;
            for (int u = 0; u < B.rows; u++)
                for (int v = 0; v < B.cols; v++) {
                    Elt x = B.at(u, v);
                    if (x) C.at(i * B.rows + u, j * B.cols + v) = F.mul(s, x);
                }
        }
    return C;
}

Mat vstack(const Mat& A, const Mat& B) {
    if (!A.F->same(*B.F) || A.cols != B.cols) throw PreconditionViolated("vstack mismatch");
    Mat C(*A.F, A.rows + B.rows, A.cols);
    std::copy(A.a.begin(), A.a.end(), C.a.begin());
    std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
    return C;
}

Mat extend_scalars(const Mat& M, const Field& big) {
    auto table = big.embedding_table(*M.F);
    Mat C(big, M.rows, M.cols);
    for (size_t i = 0; i < M.a.size(); i++) C.a[i] = table[M.a[i]];
    return C;
}

}  // namespace altsieve::ff
