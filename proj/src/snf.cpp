#include "barcalc/snf.hpp"
#include "barcalc/errors.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace barcalc {

long SNFResult::rank() const {
    long r = 0;
    long n = std::min(S.rows(), S.cols());
    for (long i = 0; i < n; ++i)
        if (S.at(i, i) != 0) ++r;
    return r;
}

std::vector<mpz_class> SNFResult::diagonal() const {
    std::vector<mpz_class> d;
    long n = std::min(S.rows(), S.cols());
    for (long i = 0; i < n; ++i) {
        mpz_class v = S.at(i, i);
        if (v == 0) break;
        d.push_back(v);
    }
    return d;
}

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

Dense dense_identity(long n) {
    Dense d(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (long i = 0; i < n; ++i) d[i][i] = 1;
    return d;
}

// Quotient minimizing |a - q*b|, b != 0. Deterministic: on ties, the smaller q.
mpz_class nearest_quotient(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_class ab = abs(b);
    if (2 * r > ab) q += (b > 0 ? 1 : -1);
    return q;
}

struct SnfWork {
    long r, c;
    Dense S, U, Uinv, V, Vinv;

    void swap_rows(long i, long j) {
        if (i == j) return;
        std::swap(S[i], S[j]);
        std::swap(U[i], U[j]);
        for (long k = 0; k < r; ++k) std::swap(Uinv[k][i], Uinv[k][j]);
    }
    void swap_cols(long i, long j) {
        if (i == j) return;
        for (long k = 0; k < r; ++k) std::swap(S[k][i], S[k][j]);
        for (long k = 0; k < c; ++k) std::swap(V[k][i], V[k][j]);
        std::swap(Vinv[i], Vinv[j]);
    }
    // row_i += q * row_j
    void add_row(long i, long j, const mpz_class& q) {
        for (long k = 0; k < c; ++k) S[i][k] += q * S[j][k];
        for (long k = 0; k < r; ++k) U[i][k] += q * U[j][k];
        for (long k = 0; k < r; ++k) Uinv[k][j] -= q * Uinv[k][i];
    }
    // col_i += q * col_j
    void add_col(long i, long j, const mpz_class& q) {
        for (long k = 0; k < r; ++k) S[k][i] += q * S[k][j];
        for (long k = 0; k < c; ++k) V[k][i] += q * V[k][j];
        for (long k = 0; k < c; ++k) Vinv[j][k] -= q * Vinv[i][k];
    }
    void negate_row(long i) {
        for (long k = 0; k < c; ++k) S[i][k] = -S[i][k];
        for (long k = 0; k < r; ++k) U[i][k] = -U[i][k];
        for (long k = 0; k < r; ++k) Uinv[k][i] = -Uinv[k][i];
    }

    // Min-abs nonzero entry of the submatrix starting at (t, t); ties by (row, col).
    bool find_pivot(long t, long& pi, long& pj) const {
        bool found = false;
        mpz_class best;
        for (long i = t; i < r; ++i)
            for (long j = t; j < c; ++j) {
                if (S[i][j] == 0) continue;
                mpz_class a = abs(S[i][j]);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }
};

} // namespace

SNFResult snf(const IntMatrix& A) {
    SnfWork w{A.rows(), A.cols(), A.to_dense(), dense_identity(A.rows()),
              dense_identity(A.rows()), dense_identity(A.cols()), dense_identity(A.cols())};
    long n = std::min(w.r, w.c);
    for (long t = 0; t < n; ++t) {
        long pi, pj;
        if (!w.find_pivot(t, pi, pj)) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (long i = t + 1; i < w.r; ++i) {
                if (w.S[i][t] == 0) continue;
                mpz_class q = nearest_quotient(w.S[i][t], w.S[t][t]);
                w.add_row(i, t, -q);
                if (w.S[i][t] != 0) {
                    w.swap_rows(t, i);
                    clean = false;
                }
            }
            for (long j = t + 1; j < w.c; ++j) {
                if (w.S[t][j] == 0) continue;
                mpz_class q = nearest_quotient(w.S[t][j], w.S[t][t]);
                w.add_col(j, t, -q);
                if (w.S[t][j] != 0) {
                    w.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // enforce the divisibility chain before moving on
            bool divides = true;
            for (long i = t + 1; i < w.r && divides; ++i)
                for (long j = t + 1; j < w.c && divides; ++j)
                    if (w.S[i][j] % w.S[t][t] != 0) {
                        w.add_row(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (w.S[t][t] < 0) w.negate_row(t);
    }
    SNFResult res;
    res.S = IntMatrix::from_dense(w.S);
    res.U = IntMatrix::from_dense(w.U);
    res.Uinv = IntMatrix::from_dense(w.Uinv);
    res.V = IntMatrix::from_dense(w.V);
    res.Vinv = IntMatrix::from_dense(w.Vinv);
    return res;
}

long rank_z(const IntMatrix& A) { return snf(A).rank(); }

IntMatrix kernel_z(const IntMatrix& A) {
    auto s = snf(A);
    long rho = s.rank();
    std::vector<long> which;
    for (long j = rho; j < A.cols(); ++j) which.push_back(j);
    return s.V.select_cols(which);
}

namespace {
long to_long(const mpz_class& v) {
    assert(v.fits_slong_p());
    return v.get_si();
}
} // namespace

FGAbelianGroup homology_z(const IntMatrix& d_in, const IntMatrix& d_out) {
    long n = d_out.cols();
    if (d_in.rows() != n) throw ShapeMismatch("homology_z: d_in rows != d_out cols");
    if (!(d_out * d_in).is_zero()) throw CompositionNotZero("homology_z: d_out * d_in != 0");
    auto s = snf(d_out);
    long rho = s.rank();
    // x in ker(d_out) iff the first rho coordinates of Vinv*x vanish, so rows
    // rho..n-1 of Vinv coordinatize the kernel
    std::vector<long> rs;
    for (long i = rho; i < n; ++i) rs.push_back(i);
    IntMatrix C = (s.Vinv * d_in).select_rows(rs);
    auto s2 = snf(C);
    std::vector<long> orders;
    for (const auto& d : s2.diagonal()) orders.push_back(to_long(d));
    long free_rank = (n - rho) - s2.rank();
    for (long i = 0; i < free_rank; ++i) orders.push_back(0);
    return FGAbelianGroup::from_cyclic_orders(orders);
}

FGAbelianGroup homology_mod(const IntMatrix& d_in, const IntMatrix& d_out, long m) {
    if (m < 2) throw ShapeMismatch("homology_mod: modulus must be >= 2");
    long n = d_out.cols();
    if (d_in.rows() != n) throw ShapeMismatch("homology_mod: d_in rows != d_out cols");
    {
        IntMatrix P = d_out * d_in;
        for (const auto& t : P.triplets())
            if (t.val % m != 0) throw CompositionNotZero("homology_mod: d_out * d_in != 0 mod m");
    }
    // lattice L = { x : d_out x = 0 mod m }, via the integer kernel of [d_out | m I]
    IntMatrix M = d_out.hstack(IntMatrix::identity(d_out.rows()).scaled(m));
    IntMatrix W = kernel_z(M);
    std::vector<long> top;
    for (long i = 0; i < n; ++i) top.push_back(i);
    IntMatrix L = W.select_rows(top);
    auto sL = snf(L);
    assert(sL.rank() == n); // m Z^n is contained in L
    // relations: im(d_in) + m Z^n, expressed in the lattice basis of L
    IntMatrix R = d_in.hstack(IntMatrix::identity(n).scaled(m));
    IntMatrix T = sL.U * R;
    auto diag = sL.diagonal();
    std::vector<IntMatrix::Triplet> cts;
    for (const auto& t : T.triplets()) {
        mpz_class q = t.val / diag[t.row];
        assert(q * diag[t.row] == t.val);
        cts.push_back({t.row, t.col, q});
    }
    IntMatrix C = IntMatrix::from_triplets(n, T.cols(), std::move(cts));
    auto s2 = snf(C);
    assert(s2.rank() == n); // the quotient is finite
    std::vector<long> orders;
    for (const auto& d : s2.diagonal()) orders.push_back(to_long(d));
    return FGAbelianGroup::from_cyclic_orders(orders);
}

namespace {

long pow_mod(long b, long e, long p) {
    long r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}
long inv_mod(long a, long p) { return pow_mod(a, p - 2, p); }

using SpCol = std::vector<std::pair<long, long>>; // (row, val) sorted by row

// a - f * b mod p
SpCol axpy(const SpCol& a, const SpCol& b, long f, long p) {
    SpCol out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            long v = (p - f * b[j].second % p) % p;
            if (v) out.push_back({b[j].first, v});
            ++j;
        } else {
            long v = ((a[i].second - f * b[j].second) % p + p) % p;
            if (v) out.push_back({a[i].first, v});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

long rank_fp(const FpMatrix& A) {
    if (!is_prime(A.p)) throw ShapeMismatch("rank_fp: modulus must be prime");
    std::vector<SpCol> cols(A.cols);
    for (const auto& t : A.ts) {
        long v = ((t.val % A.p) + A.p) % A.p;
        if (v) cols[t.col].push_back({t.row, v});
    }
    for (auto& c : cols) std::sort(c.begin(), c.end());
    std::unordered_map<long, size_t> pivot_of_row;
    std::vector<SpCol> reduced;
    long rank = 0;
    for (long j = 0; j < A.cols; ++j) {
        SpCol col = std::move(cols[j]);
        while (!col.empty()) {
            long low = col.back().first;
            auto it = pivot_of_row.find(low);
            if (it == pivot_of_row.end()) {
                pivot_of_row[low] = reduced.size();
                reduced.push_back(std::move(col));
                ++rank;
                break;
            }
            const SpCol& pcol = reduced[it->second];
            long f = col.back().second * inv_mod(pcol.back().second, A.p) % A.p;
            col = axpy(col, pcol, f, A.p);
        }
    }
    return rank;
}

long homology_dim_fp(const FpMatrix& d_in, const FpMatrix& d_out) {
    long n = d_out.cols;
    if (d_in.rows != n) throw ShapeMismatch("homology_dim_fp: shape mismatch");
    return n - rank_fp(d_out) - rank_fp(d_in);
}

} // namespace barcalc
