#include "altsieve/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace altsieve::poly {

void Poly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly x_poly(const Field& F) { return Poly(F, {0, 1}); }

Poly constant(const Field& F, Elt v) { return Poly(F, {v}); }

Poly add(const Poly& a, const Poly& b) {
    Poly r(*a.F);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = a.F->add(r.c[i], b.c[i]);
    r.trim();
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(*a.F);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = a.F->sub(r.c[i], b.c[i]);
    r.trim();
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(*a.F);
    const Field& F = *a.F;
    Poly r(F);
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); i++) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); j++)
            if (b.c[j]) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

Poly make_monic(const Poly& a) {
    if (a.is_zero() || a.monic()) return a;
    const Field& F = *a.F;
    Elt il = F.inv(a.lead());
    Poly r = a;
    for (auto& x : r.c) x = F.mul(x, il);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PreconditionViolated("polynomial division by zero");
    const Field& F = *a.F;
    Poly rem = a, quo(F);
    if (a.deg() < b.deg()) return {quo, rem};
    quo.c.assign(a.deg() - b.deg() + 1, 0);
    Elt il = F.inv(b.lead());
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        int shift = rem.deg() - b.deg();
        Elt coef = F.mul(rem.lead(), il);
        quo.c[shift] = coef;
        for (int i = 0; i <= b.deg(); i++)
            rem.c[shift + i] = F.sub(rem.c[shift + i], F.mul(coef, b.c[i]));
        rem.trim();
    }
    quo.trim();
    return {quo, rem};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = y;
        y = r;
    }
    return make_monic(x);
}

Poly pow_mod(const Poly& base, long long e, const Poly& mod) {
    Poly r = constant(*base.F, 1);
    Poly b = divmod(base, mod).second;
    while (e) {
        if (e & 1) r = divmod(mul(r, b), mod).second;
        b = divmod(mul(b, b), mod).second;
        e >>= 1;
    }
    return r;
}

Poly derivative(const Poly& a) {
    Poly r(*a.F);
    if (a.deg() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); i++) r.c[i - 1] = a.F->mul(a.c[i], a.F->from_int((long long)(i)));
    r.trim();
    return r;
}

bool equal(const Poly& a, const Poly& b) { return a.c == b.c; }

Mat eval_at_matrix(const Poly& p, const Mat& M) {
    const Field& F = *M.F;
    Mat r(F, M.rows, M.cols);
    if (p.is_zero()) return r;
    r = ff::scalar_mul(p.c.back(), Mat::identity(F, M.rows));
    for (int i = p.deg() - 1; i >= 0; i--) {
        r = ff::mul(r, M);
        for (int d = 0; d < M.rows; d++) r.at(d, d) = F.add(r.at(d, d), p.c[i]);
    }
    return r;
}

Poly order_polynomial(const Mat& M, const std::vector<Elt>& v) {
    // Krylov chain v, vM, vM^2, ... kept in echelon form with coordinates in
    // terms of the chain; first dependence gives the order polynomial.
    const Field& F = *M.F;
    int n = M.cols;
    Mat ech(F, 0, n);
    std::vector<int> pivots;                 // pivot column of each echelon row
    std::vector<std::vector<Elt>> combo;     // expression of each echelon row in chain vectors
    std::vector<Elt> cur(v);
    int step = 0;
    while (true) {
        // reduce cur against echelon, tracking the combination
        std::vector<Elt> residual = cur;
        std::vector<Elt> expr(step + 1, 0);
        expr[step] = 1;
        for (int r = 0; r < ech.rows; r++) {
            Elt lead = residual[pivots[r]];
            if (lead) {
                for (int j = 0; j < n; j++) residual[j] = F.sub(residual[j], F.mul(lead, ech.at(r, j)));
                for (size_t t = 0; t < combo[r].size(); t++)
                    expr[t] = F.sub(expr[t], F.mul(lead, combo[r][t]));
            }
        }
        int pc = -1;
        for (int j = 0; j < n; j++)
            if (residual[j]) {
                pc = j;
                break;
            }
        if (pc < 0) {
            // dependence: expr gives the order polynomial's coefficients
            return make_monic(Poly(F, expr));
        }
        Elt il = F.inv(residual[pc]);
        for (int j = 0; j < n; j++) residual[j] = F.mul(residual[j], il);
        for (auto& x : expr) x = F.mul(x, il);
        Mat grown(F, ech.rows + 1, n);
        std::copy(ech.a.begin(), ech.a.end(), grown.a.begin());
        for (int j = 0; j < n; j++) grown.at(ech.rows, j) = residual[j];
        ech = std::move(grown);
        pivots.push_back(pc);
        combo.push_back(expr);
        // advance the chain
        std::vector<Elt> next(n, 0);
        for (int i = 0; i < n; i++) {
            if (!cur[i]) continue;
            const Elt* mr = M.row(i);
            for (int j = 0; j < n; j++)
                if (mr[j]) next[j] = F.add(next[j], F.mul(cur[i], mr[j]));
        }
        cur = std::move(next);
        step++;
        if (step > n + 1) throw Error("order_polynomial failed to terminate");
    }
}

namespace {

// Equal-degree splitting (Cantor-Zassenhaus); f squarefree, all factors of
// degree d. Char 2 uses the trace-map variant.
void edf(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const Field& F = *f.F;
    if (f.deg() == d) {
        out.push_back(make_monic(f));
        return;
    }
    long long q = F.q;
    while (true) {
        Poly a(F);
        a.c.resize(f.deg());
        for (auto& x : a.c) x = Elt(rng() % q);
        a.trim();
        if (a.deg() < 1) continue;
        Poly g = gcd(a, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, rng, out);
            edf(divmod(f, g).first, d, rng, out);
            return;
        }
        Poly b(F);
        if (F.p == 2) {
            // trace map: a + a^q + a^(q^2) + ... + a^(q^(d-1)) mod f
            Poly t = divmod(a, f).second;
            Poly acc = t;
            for (int i = 1; i < d; i++) {
                t = pow_mod(t, q, f);
                acc = add(acc, t);
            }
            b = acc;
        } else {
            // a^((q^d-1)/2) = N(a)^((q-1)/2) with the norm-style product
            // N(a) = a^(1+q+...+q^(d-1)); avoids building the huge exponent
            Poly frob = divmod(a, f).second;
            Poly norm = frob;
            for (int i = 1; i < d; i++) {
                frob = pow_mod(frob, q, f);
                norm = divmod(mul(norm, frob), f).second;
            }
            b = pow_mod(norm, (q - 1) / 2, f);
            b = sub(b, constant(F, 1));
        }
        g = gcd(b, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, rng, out);
            edf(divmod(f, g).first, d, rng, out);
            return;
        }
    }
}

void factor_squarefree(const Poly& f, std::mt19937_64& rng, std::vector<Poly>& out) {
    // distinct-degree then equal-degree
    const Field& F = *f.F;
    Poly rem = make_monic(f);
    Poly xq = pow_mod(x_poly(F), F.q, rem);  // x^q mod rem
    Poly h = xq;
    int d = 1;
    while (rem.deg() >= 2 * d) {
        Poly diff = sub(h, x_poly(F));
        Poly g = gcd(diff, rem);
        if (g.deg() > 0) {
            edf(g, d, rng, out);
            rem = divmod(rem, g).first;
            h = divmod(h, rem).second;
        }
        d++;
        h = pow_mod(h, F.q, rem);
    }
    if (rem.deg() > 0) out.push_back(make_monic(rem));
}

}  // namespace

namespace {

Poly pth_root(const Poly& g) {
    // g has zero derivative, so g = h(x^p); coefficient roots via a^(q/p).
    const Field& F = *g.F;
    Poly h(F);
    h.c.resize(g.deg() / F.p + 1, 0);
    for (int i = 0; i <= g.deg(); i += F.p) {
        Elt c = g.c[i];
        h.c[i / F.p] = (c == 0) ? Elt(0) : F.pow(c, F.q / F.p);
    }
    h.trim();
    return h;
}

void squarefree_decompose(const Poly& f, int outer_mult, std::vector<std::pair<Poly, int>>& parts) {
    const Field& F = *f.F;
    if (f.deg() < 1) return;
    Poly fp = derivative(f);
    if (fp.is_zero()) {
        squarefree_decompose(pth_root(f), outer_mult * F.p, parts);
        return;
    }
    Poly c = gcd(f, fp);
    Poly w = divmod(f, c).first;
    int i = 1;
    while (w.deg() > 0) {
        Poly y = gcd(w, c);
        Poly z = divmod(w, y).first;  // multiplicity exactly i, prime to p
        if (z.deg() > 0) parts.push_back({z, outer_mult * i});
        w = y;
        c = divmod(c, y).first;
        i++;
        if (i > f.deg() + 2) throw Error("squarefree decomposition failed");
    }
    if (c.deg() > 0) squarefree_decompose(c, outer_mult, parts);
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f0, std::mt19937_64& rng) {
    Poly f = make_monic(f0);
    if (f.deg() < 1) return {};
    std::vector<std::pair<Poly, int>> result;
    std::vector<std::pair<Poly, int>> squarefree_parts;
    squarefree_decompose(f, 1, squarefree_parts);
    for (auto& [part, m] : squarefree_parts) {
        std::vector<Poly> irr;
        factor_squarefree(part, rng, irr);
        for (auto& p : irr) result.push_back({p, m});
    }
    // merge duplicates, sort canonically
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        return a.first.c < b.first.c;
    });
    std::vector<std::pair<Poly, int>> merged;
    for (auto& pr : result) {
        if (!merged.empty() && equal(merged.back().first, pr.first)) merged.back().second += pr.second;
        else merged.push_back(pr);
    }
    return merged;
}

bool is_irreducible(const Poly& f) {
    if (f.deg() < 1) return false;
    if (f.deg() == 1) return true;
    const Field& F = *f.F;
    // Rabin test: x^(q^n) = x mod f and gcd(x^(q^(n/r)) - x, f) = 1 for prime r | n
    int n = f.deg();
    Poly x = x_poly(F);
    Poly xp = x;
    std::vector<Poly> powers;  // x^(q^i) mod f
    powers.push_back(divmod(x, f).second);
    for (int i = 1; i <= n; i++) {
        xp = pow_mod(xp, F.q, f);
        powers.push_back(xp);
    }
    if (!equal(powers[n], divmod(x, f).second)) return false;
    for (int r = 2; r <= n; r++) {
        if (n % r) continue;
        bool prime = true;
        for (int d = 2; d * d <= r; d++)
            if (r % d == 0) prime = false;
        if (!prime) continue;
        Poly diff = sub(powers[n / r], x);
        if (gcd(diff, f).deg() != 0) return false;
    }
    return true;
}

// ---- cyclotomic integers ---------------------------------------------------

std::vector<long long> cyclotomic_poly(int m) {
    // Phi_m via repeated exact division of x^m - 1 by Phi_d for d | m, d < m.
    std::vector<std::vector<long long>> phi(m + 1);
    for (int d = 1; d <= m; d++) {
        if (m % d) continue;
        std::vector<long long> num(d + 1, 0);
        num[0] = -1;
        num[d] = 1;  // x^d - 1
        for (int e = 1; e < d; e++) {
            if (d % e) continue;
            // divide num by phi[e] exactly
            const auto& den = phi[e];
            std::vector<long long> quo(num.size() - den.size() + 1, 0);
            std::vector<long long> rem = num;
            for (int i = int(quo.size()) - 1; i >= 0; i--) {
                long long c = rem[i + den.size() - 1] / den.back();
                quo[i] = c;
                if (c)
                    for (size_t j = 0; j < den.size(); j++) rem[i + j] -= c * den[j];
            }
            num = quo;
        }
        phi[d] = num;
    }
    return phi[m];
}

Cyclotomic cyclotomic_from_exponents(int m, const std::vector<long long>& a) {
    auto phim = cyclotomic_poly(m);
    int deg = int(phim.size()) - 1;
    // reduce sum a_j x^j modulo Phi_m over Z
    std::vector<long long> r(a.begin(), a.end());
    r.resize(std::max<size_t>(r.size(), deg), 0);
    for (int i = int(r.size()) - 1; i >= deg; i--) {
        long long c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (int j = 0; j < deg; j++) r[i - deg + j] -= c * phim[j];
    }
    r.resize(deg);
    Cyclotomic out;
    out.m = m;
    out.coeffs = std::move(r);
    return out;
}

bool Cyclotomic::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](long long c) { return c == 0; });
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coeffs.size(); i++)
        if (coeffs[i]) return false;
    return true;
}

long long Cyclotomic::rational_value() const {
    if (!is_rational()) throw PreconditionViolated("cyclotomic value is irrational");
    return coeffs.empty() ? 0 : coeffs[0];
}

std::string Cyclotomic::to_string() const {
    if (is_rational()) return std::to_string(coeffs.empty() ? 0 : coeffs[0]);
    std::string s;
    for (size_t i = 0; i < coeffs.size(); i++) {
        if (i) s += ":";
        s += std::to_string(coeffs[i]);
    }
    return s + "@" + std::to_string(m);
}

Cyclotomic lift_conductor(const Cyclotomic& v, int m2) {
    if (m2 % v.m != 0) throw PreconditionViolated("conductor lift requires divisibility");
    if (m2 == v.m) return v;
    int s = m2 / v.m;
    std::vector<long long> a(size_t(m2), 0);
    // zeta_m^j = zeta_{m2}^{js}; coeffs are on powers of zeta_m
    for (size_t j = 0; j < v.coeffs.size(); j++) a[j * s] += v.coeffs[j];
    return cyclotomic_from_exponents(m2, a);
}

}  // namespace altsieve::poly
