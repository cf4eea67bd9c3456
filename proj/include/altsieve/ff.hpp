#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "altsieve/util.hpp"

namespace altsieve::ff {

// Field element: index in [0, q). The index is the base-p digit encoding of
// the polynomial representation, so 0 and 1 are the field's 0 and 1 and the
// encoding is stable across runs.
using Elt = uint16_t;

class Field {
  public:
    int p = 0, k = 0, q = 0;
    std::vector<int> conway;  // defining polynomial, coeffs low->high, monic of degree k
    Elt gen = 0;              // fixed primitive element

    // Canonical field for (p, k). Returned reference is stable for the
    // lifetime of the process; equal (p,k) always gives the same object.
    static const Field& get(int p, int k);

    bool same(const Field& o) const { return p == o.p && k == o.k; }

    Elt add(Elt a, Elt b) const {
        if (q <= kTableLimit) return addt_[size_t(a) * q + b];
        return add_slow(a, b);
    }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt neg(Elt a) const { return negt_[a]; }
    Elt mul(Elt a, Elt b) const {
        if (q <= kTableLimit) return mult_[size_t(a) * q + b];
        if (a == 0 || b == 0) return 0;
        return expt_[size_t(logt_[a]) + logt_[b]];
    }
    Elt inv(Elt a) const {
        if (a == 0) throw PreconditionViolated("division by zero in GF(" + std::to_string(q) + ")");
        return expt_[(q - 1) - logt_[a]];
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, long long e) const;

    // Scalar from an integer (image of n under Z -> GF(p) -> GF(q)).
    Elt from_int(long long n) const {
        long long r = n % p;
        if (r < 0) r += p;
        return Elt(r);
    }

    // Multiplicative order of a nonzero element.
    int order(Elt a) const;

    // Discrete log with respect to gen (a != 0).
    int log(Elt a) const {
        if (a == 0) throw PreconditionViolated("log of zero");
        return logt_[a];
    }
    Elt exp(long long e) const {
        long long m = e % (q - 1);
        if (m < 0) m += q - 1;
        return expt_[m];
    }

    // Image of the canonical generator of the subfield GF(p^sk) in this
    // field; requires sk | k. Deterministic: the defining polynomials are
    // norm-compatible Conway polynomials, so gen^((q-1)/(p^sk-1)) works.
    Elt embed_generator(const Field& sub) const;

    // Entry-wise embedding map for elements of `sub` into this field.
    std::vector<Elt> embedding_table(const Field& sub) const;

    std::string name() const;  // e.g. "2^4"

  private:
    static constexpr int kTableLimit = 256;
    std::vector<Elt> expt_;  // size 2(q-1)
    std::vector<int> logt_;  // size q, logt_[0] = -1
    std::vector<Elt> zech_;  // size q-1; q-1 acts as "result is zero" sentinel
    std::vector<Elt> negt_;
    std::vector<Elt> addt_, mult_;  // full tables when q <= kTableLimit

    Elt add_slow(Elt a, Elt b) const;
    void build(int p, int k, std::vector<int> conway_coeffs);
    friend struct FieldRegistry;
};

// Dense row-major matrix over a fixed field.
class Mat {
  public:
    const Field* F = nullptr;
    int rows = 0, cols = 0;
    std::vector<Elt> a;

    Mat() = default;
    Mat(const Field& f, int r, int c) : F(&f), rows(r), cols(c), a(size_t(r) * c, 0) {}

    Elt& at(int r, int c) { return a[size_t(r) * cols + c]; }
    Elt at(int r, int c) const { return a[size_t(r) * cols + c]; }
    const Elt* row(int r) const { return a.data() + size_t(r) * cols; }
    Elt* row(int r) { return a.data() + size_t(r) * cols; }

    static Mat identity(const Field& f, int n);
    static Mat zero(const Field& f, int r, int c) { return Mat(f, r, c); }
    static Mat random(const Field& f, int r, int c, std::mt19937_64& rng);

    bool operator==(const Mat& o) const { return F->same(*o.F) && rows == o.rows && cols == o.cols && a == o.a; }
    bool is_zero() const;

    Mat transpose() const;
    void scale_row(int r, Elt s);
    void add_scaled_row(int dst, int src, Elt s);  // row[dst] += s*row[src]
};

namespace kernels {

// Serial reference kernels. Kept separate so the parallel versions can be
// checked against them and benchmarked; see tools/bench_kernels.cpp.
Mat mul_serial(const Mat& A, const Mat& B);
int rref_serial(Mat& M);

// OpenMP kernels (fall back to serial when built without OpenMP).
Mat mul_parallel(const Mat& A, const Mat& B);
int rref_parallel(Mat& M);

bool parallel_available();

}  // namespace kernels

// Dispatching entry points used by the rest of the library. They pick the
// parallel kernel for large GF(p) work and the bit-packed path over GF(2).
Mat mul(const Mat& A, const Mat& B);
Mat add(const Mat& A, const Mat& B);
Mat sub(const Mat& A, const Mat& B);
Mat scalar_mul(Elt s, const Mat& A);

// In-place reduced row echelon form; returns rank, records pivot columns.
int rref(Mat& M, std::vector<int>* pivots = nullptr);
int rank(const Mat& M);
Mat kernel_basis(const Mat& M);       // right null space { x : M x = 0 }; basis vectors as rows
Mat left_kernel_basis(const Mat& M);  // left null space { v : v M = 0 }; basis vectors as rows
Mat inverse(const Mat& M);
Mat mat_pow(const Mat& M, long long e);
Mat kron(const Mat& A, const Mat& B);
Mat vstack(const Mat& A, const Mat& B);

// Map a matrix entry-wise into an extension field of the same characteristic.
Mat extend_scalars(const Mat& M, const Field& big);

}  // namespace altsieve::ff
