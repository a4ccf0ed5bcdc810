#include "barcalc/dg.hpp"
#include "barcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace barcalc {

void OwnedChainMap::validate() const {
    long top = std::min(source.top_degree(), target.top_degree());
    for (long i = 1; i <= top; ++i) {
        if (!eq_mod(target.diff_or_zero(i) * maps[i], maps[i - 1] * source.diff_or_zero(i),
                    source.ring))
            throw CompositionNotZero("chain map does not commute with d at degree " +
                                     std::to_string(i));
    }
}

namespace {

std::vector<mpz_class> unit_vec(long dim, long at) {
    std::vector<mpz_class> v(dim);
    v[at] = 1;
    return v;
}

// all ascending index subsets of {0..t-1} of size p
void subsets(long t, long p, std::vector<long>& cur, std::vector<std::vector<long>>& out, long from) {
    if (static_cast<long>(cur.size()) == p) {
        out.push_back(cur);
        return;
    }
    for (long v = from; v < t; ++v) {
        cur.push_back(v);
        subsets(t, p, cur, out, v + 1);
        cur.pop_back();
    }
}

std::vector<long> complement(long t, const std::vector<long>& mu) {
    std::vector<long> nu;
    size_t k = 0;
    for (long v = 0; v < t; ++v) {
        if (k < mu.size() && mu[k] == v)
            ++k;
        else
            nu.push_back(v);
    }
    return nu;
}

long shuffle_sign(const std::vector<long>& mu, const std::vector<long>& nu) {
    long inv = 0;
    for (long m : mu)
        for (long n : nu)
            if (m > n) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

std::vector<mpz_class> project(const std::vector<mpz_class>& full, const std::vector<long>& basis) {
    std::vector<mpz_class> out;
    out.reserve(basis.size());
    for (long b : basis) out.push_back(full[b]);
    return out;
}

} // namespace

OwnedChainMap ez_shuffle(const SimplicialKModule& x, const SimplicialKModule& y, long up_to) {
    if (x.truncation < up_to || y.truncation < up_to)
        throw TruncationTooLow("ez_shuffle beyond truncation");
    if (!(x.ring == y.ring)) throw ShapeMismatch("ez_shuffle: base ring mismatch");
    NormalizedChains nx = normalized_chains(x, up_to), ny = normalized_chains(y, up_to);
    SimplicialKModule xy = tensor_product(x, y);
    NormalizedChains nxy = normalized_chains(xy, up_to);
    OwnedChainMap r;
    r.source = tensor_complex(nx.complex, ny.complex, up_to);
    r.target = nxy.complex;
    for (long t = 0; t <= up_to; ++t) {
        std::vector<IntMatrix::Triplet> ts;
        for (long p = 0; p <= t; ++p) {
            long q = t - p;
            long off = tensor_summand_offset(nx.complex, ny.complex, p, q);
            std::vector<std::vector<long>> mus;
            std::vector<long> cur;
            subsets(t, p, cur, mus, 0);
            for (long ai = 0; ai < nx.complex.rank(p); ++ai)
                for (long bi = 0; bi < ny.complex.rank(q); ++bi) {
                    long col = off + ai * ny.complex.rank(q) + bi;
                    std::vector<mpz_class> acc(x.dim[t] * y.dim[t]);
                    for (const auto& mu : mus) {
                        auto nu = complement(t, mu);
                        long sign = shuffle_sign(mu, nu);
                        auto va = unit_vec(x.dim[p], nx.basis[p][ai]);
                        for (size_t k = 0; k < nu.size(); ++k)
                            va = x.degen[p + k][nu[k]].apply(va);
                        auto vb = unit_vec(y.dim[q], ny.basis[q][bi]);
                        for (size_t k = 0; k < mu.size(); ++k)
                            vb = y.degen[q + k][mu[k]].apply(vb);
                        for (long rx = 0; rx < x.dim[t]; ++rx) {
                            if (va[rx] == 0) continue;
                            for (long ry = 0; ry < y.dim[t]; ++ry)
                                if (vb[ry] != 0) acc[rx * y.dim[t] + ry] += sign * va[rx] * vb[ry];
                        }
                    }
                    for (size_t bj = 0; bj < nxy.basis[t].size(); ++bj) {
                        const mpz_class& v = acc[nxy.basis[t][bj]];
                        if (v != 0) ts.push_back({static_cast<long>(bj), col, v});
                    }
                }
        }
        r.maps.push_back(reduce_mod(
            IntMatrix::from_triplets(r.target.rank(t), r.source.rank(t), std::move(ts)), x.ring));
    }
    r.validate();
    return r;
}

OwnedChainMap alexander_whitney(const SimplicialKModule& x, const SimplicialKModule& y, long up_to) {
    if (x.truncation < up_to || y.truncation < up_to)
        throw TruncationTooLow("alexander_whitney beyond truncation");
    if (!(x.ring == y.ring)) throw ShapeMismatch("alexander_whitney: base ring mismatch");
    NormalizedChains nx = normalized_chains(x, up_to), ny = normalized_chains(y, up_to);
    SimplicialKModule xy = tensor_product(x, y);
    NormalizedChains nxy = normalized_chains(xy, up_to);
    OwnedChainMap r;
    r.source = nxy.complex;
    r.target = tensor_complex(nx.complex, ny.complex, up_to);
    for (long t = 0; t <= up_to; ++t) {
        std::vector<IntMatrix::Triplet> ts;
        for (size_t ci = 0; ci < nxy.basis[t].size(); ++ci) {
            long full = nxy.basis[t][ci];
            long a = full / y.dim[t], b = full % y.dim[t];
            for (long p = 0; p <= t; ++p) {
                long q = t - p;
                auto va = unit_vec(x.dim[t], a);
                for (long lev = t; lev > p; --lev) va = x.face[lev][lev].apply(va);
                auto vb = unit_vec(y.dim[t], b);
                for (long lev = t; lev > q; --lev) vb = y.face[lev][0].apply(vb);
                auto pa = project(va, nx.basis[p]);
                auto pb = project(vb, ny.basis[q]);
                long off = tensor_summand_offset(nx.complex, ny.complex, p, q);
                for (size_t ra = 0; ra < pa.size(); ++ra) {
                    if (pa[ra] == 0) continue;
                    for (size_t rb = 0; rb < pb.size(); ++rb)
                        if (pb[rb] != 0)
                            ts.push_back({off + static_cast<long>(ra * pb.size() + rb),
                                          static_cast<long>(ci), pa[ra] * pb[rb]});
                }
            }
        }
        r.maps.push_back(reduce_mod(
            IntMatrix::from_triplets(r.target.rank(t), r.source.rank(t), std::move(ts)), x.ring));
    }
    r.validate();
    return r;
}

void DGAlgebra::validate() const {
    auto fail = [](const std::string& what) { throw InvalidAlgebra("dg algebra: " + what); };
    complex.validate();
    long top = complex.top_degree();
    const Coeff& k = complex.ring;
    auto prod = [&](long i, long j) -> const IntMatrix& { return product[i][j]; };
    for (long i = 0; i <= top; ++i)
        for (long j = 0; i + j <= top; ++j)
            if (prod(i, j).rows() != complex.rank(i + j) ||
                prod(i, j).cols() != complex.rank(i) * complex.rank(j))
                fail("product shape at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (unit.rows() != complex.rank(0) || unit.cols() != 1) fail("unit shape");
    if (aug.rows() != 1 || aug.cols() != complex.rank(0)) fail("augmentation shape");
    for (long i = 0; i <= top; ++i)
        for (long j = 0; i + j <= top; ++j) {
            long ri = complex.rank(i), rj = complex.rank(j);
            // graded commutativity against the swapped columns of product[j][i]
            std::vector<long> swapped(ri * rj);
            for (long xi = 0; xi < ri; ++xi)
                for (long yj = 0; yj < rj; ++yj) swapped[xi * rj + yj] = yj * ri + xi;
            IntMatrix other = prod(j, i).select_cols(swapped);
            if (i * j % 2 == 1) other = other.scaled(-1);
            if (!eq_mod(prod(i, j), other, k)) fail("not graded commutative");
            // Leibniz
            if (i + j >= 1) {
                IntMatrix lhs = complex.diff_or_zero(i + j) * prod(i, j);
                IntMatrix rhs = IntMatrix::zero(complex.rank(i + j - 1), ri * rj);
                if (i >= 1)
                    rhs = rhs + prod(i - 1, j) *
                                    complex.diff_or_zero(i).kron(IntMatrix::identity(rj));
                if (j >= 1) {
                    IntMatrix term =
                        prod(i, j - 1) * IntMatrix::identity(ri).kron(complex.diff_or_zero(j));
                    rhs = i % 2 == 0 ? rhs + term : rhs - term;
                }
                if (!eq_mod(lhs, rhs, k)) fail("Leibniz rule fails at (" + std::to_string(i) + "," +
                                               std::to_string(j) + ")");
            }
            for (long l = 0; i + j + l <= top; ++l) {
                long rl = complex.rank(l);
                IntMatrix lhs = prod(i + j, l) * prod(i, j).kron(IntMatrix::identity(rl));
                IntMatrix rhs = prod(i, j + l) * IntMatrix::identity(ri).kron(prod(j, l));
                if (!eq_mod(lhs, rhs, k)) fail("not associative");
            }
        }
    for (long j = 0; j <= top; ++j) {
        long rj = complex.rank(j);
        if (!eq_mod(prod(0, j) * unit.kron(IntMatrix::identity(rj)), IntMatrix::identity(rj), k))
            fail("unit fails");
    }
    if (!eq_mod(aug * unit, IntMatrix::identity(1), k)) fail("augmentation of unit");
    if (!eq_mod(aug * product[0][0], aug.kron(aug), k)) fail("augmentation not an algebra map");
    if (top >= 1 && !reduce_mod(aug * complex.diff(1), k).is_zero())
        fail("augmentation does not kill boundaries");
}

DGAlgebra dg_algebra_from(const AugCommAlgebra& a) {
    DGAlgebra d;
    d.complex.ring = a.k;
    d.complex.ranks = {a.dim};
    d.complex.diffs = {IntMatrix::zero(0, a.dim)};
    d.product = {{a.product}};
    d.unit = a.unit;
    d.aug = a.aug;
    return d;
}

namespace {

// A bar word: letters (internal degree, ideal index), total degree = sum(q + 1).
using Word = std::vector<std::pair<long, long>>;

struct BarBasis {
    std::vector<std::vector<Word>> words; // words[t]
    std::vector<std::map<Word, long>> index;

    long find(long t, const Word& w) const {
        auto it = index[t].find(w);
        if (it == index[t].end()) throw IndexOutOfRange("bar word not in basis");
        return it->second;
    }
};

void gen_words(const std::vector<long>& ideal_dim, long up_to, Word& cur, long deg, BarBasis& b) {
    b.index[deg].emplace(cur, static_cast<long>(b.words[deg].size()));
    b.words[deg].push_back(cur);
    for (long q = 0; q < static_cast<long>(ideal_dim.size()); ++q) {
        if (deg + q + 1 > up_to) break;
        for (long idx = 0; idx < ideal_dim[q]; ++idx) {
            cur.push_back({q, idx});
            gen_words(ideal_dim, up_to, cur, deg + q + 1, b);
            cur.pop_back();
        }
    }
}

long word_degree(const Word& w) {
    long t = 0;
    for (auto& [q, idx] : w) t += q + 1;
    return t;
}

// sparse column of a matrix
std::vector<std::pair<long, mpz_class>> column(const IntMatrix& m, long c) {
    std::vector<std::pair<long, mpz_class>> out;
    for (const auto& t : m.triplets())
        if (t.col == c) out.push_back({t.row, t.val});
    return out;
}

} // namespace

DGAlgebra dg_bar(const DGAlgebra& a, long up_to) {
    const Coeff& k = a.complex.ring;
    long atop = a.complex.top_degree();
    // unit must be a basis vector
    long u = -1;
    {
        auto ts = a.unit.triplets();
        if (ts.size() != 1 || ts[0].val != 1)
            throw InvalidAlgebra("dg_bar needs the unit to be a basis vector");
        u = ts[0].row;
    }
    // augmentation ideal: degree 0 drops the unit coordinate, higher degrees whole
    std::vector<long> ideal_dim(atop + 1);
    std::vector<IntMatrix> incl(atop + 1), proj(atop + 1);
    {
        std::vector<long> keep;
        for (long i = 0; i < a.complex.rank(0); ++i)
            if (i != u) keep.push_back(i);
        ideal_dim[0] = static_cast<long>(keep.size());
        std::vector<IntMatrix::Triplet> jts;
        for (size_t c = 0; c < keep.size(); ++c) {
            jts.push_back({keep[c], static_cast<long>(c), 1});
            mpz_class e = a.aug.at(0, keep[c]);
            if (e != 0) jts.push_back({u, static_cast<long>(c), -e});
        }
        incl[0] = IntMatrix::from_triplets(a.complex.rank(0), ideal_dim[0], std::move(jts));
        proj[0] = IntMatrix::identity(a.complex.rank(0)).select_rows(keep);
    }
    for (long q = 1; q <= atop; ++q) {
        ideal_dim[q] = a.complex.rank(q);
        incl[q] = IntMatrix::identity(ideal_dim[q]);
        proj[q] = IntMatrix::identity(ideal_dim[q]);
    }
    auto ideal_diff = [&](long q) { // I_q -> I_{q-1}
        return proj[q - 1] * a.complex.diff(q) * incl[q];
    };
    auto ideal_prod = [&](long q, long r) { // I_q (x) I_r -> I_{q+r}
        return proj[q + r] * a.product[q][r] * incl[q].kron(incl[r]);
    };

    BarBasis basis;
    basis.words.resize(up_to + 1);
    basis.index.resize(up_to + 1);
    {
        Word cur;
        gen_words(ideal_dim, up_to, cur, 0, basis);
    }

    DGAlgebra b;
    b.complex.ring = k;
    for (long t = 0; t <= up_to; ++t)
        b.complex.ranks.push_back(static_cast<long>(basis.words[t].size()));
    b.complex.diffs.push_back(IntMatrix::zero(0, b.complex.ranks[0]));
    // cache ideal differential and product matrices
    std::vector<IntMatrix> idiff(atop + 1);
    for (long q = 1; q <= atop; ++q) idiff[q] = ideal_diff(q);
    std::map<std::pair<long, long>, IntMatrix> iprod;
    for (long q = 0; q <= atop; ++q)
        for (long r = 0; q + r <= atop; ++r) iprod[{q, r}] = ideal_prod(q, r);

    for (long t = 1; t <= up_to; ++t) {
        std::vector<IntMatrix::Triplet> ts;
        for (long wi = 0; wi < b.complex.ranks[t]; ++wi) {
            const Word& w = basis.words[t][wi];
            long s = static_cast<long>(w.size());
            long eps = 0; // suspended degree of the prefix
            for (long i = 0; i < s; ++i) {
                auto [q, idx] = w[i];
                // internal differential of letter i, sign -(-1)^{eps_{i-1}}
                if (q >= 1) {
                    mpz_class sg = eps % 2 == 0 ? -1 : 1;
                    for (const auto& [row, val] : column(idiff[q], idx)) {
                        Word nw = w;
                        nw[i] = {q - 1, row};
                        ts.push_back({basis.find(t - 1, nw), wi, sg * val});
                    }
                }
                eps += q + 1;
                // merge letters i, i+1, sign -(-1)^{eps_i}
                if (i + 1 < s) {
                    auto [q2, idx2] = w[i + 1];
                    if (q + q2 <= atop) {
                        mpz_class sg = eps % 2 == 0 ? -1 : 1;
                        long c = idx * ideal_dim[q2] + idx2;
                        for (const auto& [row, val] : column(iprod[{q, q2}], c)) {
                            Word nw;
                            nw.reserve(s - 1);
                            for (long j = 0; j < s; ++j) {
                                if (j == i)
                                    nw.push_back({q + q2, row});
                                else if (j != i + 1)
                                    nw.push_back(w[j]);
                            }
                            ts.push_back({basis.find(t - 1, nw), wi, sg * val});
                        }
                    }
                }
            }
        }
        b.complex.diffs.push_back(reduce_mod(
            IntMatrix::from_triplets(b.complex.ranks[t - 1], b.complex.ranks[t], std::move(ts)), k));
    }
    b.complex.validate();

    // shuffle product on words, Koszul signs on suspended degrees
    b.product.assign(up_to + 1, {});
    for (long t1 = 0; t1 <= up_to; ++t1)
        for (long t2 = 0; t1 + t2 <= up_to; ++t2) {
            std::vector<IntMatrix::Triplet> ts;
            long r2 = b.complex.ranks[t2];
            for (long i1 = 0; i1 < b.complex.ranks[t1]; ++i1)
                for (long i2 = 0; i2 < r2; ++i2) {
                    const Word& w1 = basis.words[t1][i1];
                    const Word& w2 = basis.words[t2][i2];
                    // interleave keeping each word's order; track Koszul sign
                    struct Frame {
                        size_t a, b;
                        Word w;
                        long sign;
                    };
                    std::vector<Frame> stack{{0, 0, {}, 1}};
                    while (!stack.empty()) {
                        Frame f = std::move(stack.back());
                        stack.pop_back();
                        if (f.a == w1.size() && f.b == w2.size()) {
                            ts.push_back({basis.find(t1 + t2, f.w), i1 * r2 + i2, f.sign});
                            continue;
                        }
                        if (f.a < w1.size()) {
                            Frame g = f;
                            g.w.push_back(w1[f.a]);
                            ++g.a;
                            stack.push_back(std::move(g));
                        }
                        if (f.b < w2.size()) {
                            // w2's letter jumps over the remaining letters of w1
                            long jump = 0;
                            for (size_t j = f.a; j < w1.size(); ++j) jump += w1[j].first + 1;
                            Frame g = f;
                            g.w.push_back(w2[f.b]);
                            ++g.b;
                            if ((jump * (w2[f.b].first + 1)) % 2 == 1) g.sign = -g.sign;
                            stack.push_back(std::move(g));
                        }
                    }
                }
            b.product[t1].push_back(reduce_mod(
                IntMatrix::from_triplets(b.complex.ranks[t1 + t2],
                                         b.complex.ranks[t1] * r2, std::move(ts)),
                k));
        }
    b.unit = IntMatrix::from_triplets(b.complex.ranks[0], 1, {{0, 0, 1}});
    b.aug = IntMatrix::from_triplets(1, b.complex.ranks[0], {{0, 0, 1}});
    b.validate();
    return b;
}

ChainComplex condense(const BisimplicialModule& x, long up_to) {
    if (x.truncation < up_to) throw TruncationTooLow("condense beyond truncation");
    // degenerate coordinates at (p, q): images of horizontal and vertical degeneracies
    std::vector<std::vector<std::vector<long>>> basis(up_to + 1,
                                                      std::vector<std::vector<long>>(up_to + 1));
    for (long p = 0; p <= up_to; ++p)
        for (long q = 0; q <= up_to; ++q) {
            std::vector<bool> mark(x.dim[p][q], false);
            auto absorb = [&](const IntMatrix& s) {
                std::vector<long> count(s.cols(), 0);
                for (const auto& t : s.triplets()) {
                    if (!(t.val == 1 || t.val == -1))
                        throw ShapeMismatch("condense needs signed-basis degeneracy columns");
                    ++count[t.col];
                    mark[t.row] = true;
                }
                for (long c = 0; c < s.cols(); ++c)
                    if (count[c] != 1)
                        throw ShapeMismatch("condense needs signed-basis degeneracy columns");
            };
            if (p >= 1)
                for (const auto& s : x.hdegen[p - 1][q]) absorb(s);
            if (q >= 1)
                for (const auto& s : x.vdegen[p][q - 1]) absorb(s);
            for (long c = 0; c < x.dim[p][q]; ++c)
                if (!mark[c]) basis[p][q].push_back(c);
        }
    auto alt_sum = [&](const std::vector<IntMatrix>& faces, long rows, long cols) {
        IntMatrix d = IntMatrix::zero(rows, cols);
        for (size_t i = 0; i < faces.size(); ++i)
            d = i % 2 == 0 ? d + faces[i] : d - faces[i];
        return d;
    };
    ChainComplex c;
    c.ring = x.ring;
    std::vector<std::vector<long>> offset(up_to + 1);
    for (long t = 0; t <= up_to; ++t) {
        long r = 0;
        offset[t].resize(t + 1);
        for (long p = 0; p <= t; ++p) {
            offset[t][p] = r;
            r += static_cast<long>(basis[p][t - p].size());
        }
        c.ranks.push_back(r);
    }
    c.diffs.push_back(IntMatrix::zero(0, c.ranks[0]));
    for (long t = 1; t <= up_to; ++t) {
        std::vector<IntMatrix::Triplet> ts;
        for (long p = 0; p <= t; ++p) {
            long q = t - p;
            if (basis[p][q].empty()) continue;
            if (p >= 1) {
                IntMatrix dh = alt_sum(x.hface[p][q], x.dim[p - 1][q], x.dim[p][q])
                                   .select_rows(basis[p - 1][q])
                                   .select_cols(basis[p][q]);
                for (const auto& e : dh.triplets())
                    ts.push_back({offset[t - 1][p - 1] + e.row, offset[t][p] + e.col, e.val});
            }
            if (q >= 1) {
                IntMatrix dv = alt_sum(x.vface[p][q], x.dim[p][q - 1], x.dim[p][q])
                                   .select_rows(basis[p][q - 1])
                                   .select_cols(basis[p][q]);
                mpz_class sg = p % 2 == 0 ? 1 : -1;
                for (const auto& e : dv.triplets())
                    ts.push_back({offset[t - 1][p] + e.row, offset[t][p] + e.col, sg * e.val});
            }
        }
        c.diffs.push_back(
            reduce_mod(IntMatrix::from_triplets(c.ranks[t - 1], c.ranks[t], std::move(ts)), x.ring));
    }
    c.validate();
    return c;
}

DoldPuppeReport dold_puppe_compare(const BisimplicialModule& x, long up_to) {
    if (!x.ring.is_prime_field())
        throw ShapeMismatch("dold_puppe_compare needs a prime-field base ring");
    if (x.truncation < up_to + 1)
        throw TruncationTooLow("dold_puppe_compare needs truncation >= up_to + 1");
    DoldPuppeReport rep;
    NormalizedChains nd = normalized_chains(diagonal(x), up_to + 1);
    ChainComplex cc = condense(x, up_to + 1);
    for (long i = 0; i <= up_to; ++i) {
        rep.diag_dims.push_back(nd.complex.homology_dim_over_field(i));
        rep.condense_dims.push_back(cc.homology_dim_over_field(i));
    }
    return rep;
}

} // namespace barcalc
