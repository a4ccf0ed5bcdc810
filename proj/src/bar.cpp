#include "barcalc/bar.hpp"
#include "barcalc/errors.hpp"

#include <cstdlib>
#include <string>

namespace barcalc {

long simplex_cap() {
    if (const char* env = std::getenv("BARCALC_CAP")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
        throw ParseError("BARCALC_CAP must be a positive integer");
    }
    return 1L << 22;
}

namespace {

long ipow(long b, long e) {
    long r = 1;
    for (long k = 0; k < e; ++k) r *= b;
    return r;
}

// base^(p^n), guarded by the cap
long level_card(long base, long n, long p, long cap) {
    if (base == 1) return 1;
    long e = ipow(p, n);
    long card = 1;
    for (long k = 0; k < e; ++k) {
        if (card > cap / base)
            throw ResourceBudgetExceeded("level of size " + std::to_string(base) + "^" +
                                         std::to_string(e) + " exceeds the simplex cap");
        card *= base;
    }
    if (card > cap)
        throw ResourceBudgetExceeded("level size " + std::to_string(card) +
                                     " exceeds the simplex cap");
    return card;
}

void check_tuple(const FiniteRing& s, long n, long p, const NestedTuple& t) {
    if (t.depth != n || t.level != p || static_cast<long>(t.leaves.size()) != ipow(p, n))
        throw ShapeMismatch("tuple shape does not match (depth, level)");
    for (long v : t.leaves)
        if (v < 0 || v >= s.size) throw IndexOutOfRange("tuple leaf outside the carrier");
}

// nerve face/degeneracy patterns on p blocks, as (p-1) x p and (p+1) x p maps
IntMatrix face_pattern(long p, long i) {
    std::vector<IntMatrix::Triplet> ts;
    for (long r = 0; r < p - 1; ++r) {
        if (i == 0)
            ts.push_back({r, r + 1, 1});
        else if (i == p)
            ts.push_back({r, r, 1});
        else if (r < i - 1)
            ts.push_back({r, r, 1});
        else if (r == i - 1) {
            ts.push_back({r, r, 1});
            ts.push_back({r, r + 1, 1});
        } else
            ts.push_back({r, r + 1, 1});
    }
    return IntMatrix::from_triplets(p - 1, p, std::move(ts));
}

IntMatrix degen_pattern(long p, long i) {
    std::vector<IntMatrix::Triplet> ts;
    for (long r = 0; r < p; ++r) ts.push_back({r < i ? r : r + 1, r, 1});
    return IntMatrix::from_triplets(p + 1, p, std::move(ts));
}

IntMatrix kron_pow(const IntMatrix& m, long k) {
    IntMatrix r = IntMatrix::identity(1);
    for (long j = 0; j < k; ++j) r = r.kron(m);
    return r;
}

} // namespace

NestedTuple decode_tuple(const FiniteRing& s, long n, long p, long index) {
    long count = ipow(p, n);
    NestedTuple t{n, p, std::vector<long>(count)};
    for (long j = count - 1; j >= 0; --j) {
        t.leaves[j] = index % s.size;
        index /= s.size;
    }
    if (index != 0) throw IndexOutOfRange("tuple index out of range");
    return t;
}

long encode_tuple(const FiniteRing& s, const NestedTuple& t) {
    long idx = 0;
    for (long v : t.leaves) idx = idx * s.size + v;
    return idx;
}

NestedTuple tuple_add(const FiniteRing& s, const NestedTuple& a, const NestedTuple& b) {
    if (a.depth != b.depth || a.level != b.level) throw ShapeMismatch("tuple shapes differ");
    NestedTuple r = a;
    for (size_t j = 0; j < r.leaves.size(); ++j) r.leaves[j] = s.add[a.leaves[j]][b.leaves[j]];
    return r;
}

NestedTuple zero_tuple(const FiniteRing& s, long n, long p) {
    return {n, p, std::vector<long>(ipow(p, n), s.zero)};
}

NestedTuple face_eval(const FiniteRing& s, long n, long p, long i, const NestedTuple& t) {
    check_tuple(s, n, p, t);
    if (p < 1 || i < 0 || i > p) throw IndexOutOfRange("face index out of range");
    if (n == 0) return {0, p - 1, t.leaves};
    if (n == 1) {
        NestedTuple r{1, p - 1, {}};
        if (i == 0)
            r.leaves.assign(t.leaves.begin() + 1, t.leaves.end());
        else if (i == p)
            r.leaves.assign(t.leaves.begin(), t.leaves.end() - 1);
        else {
            r.leaves = t.leaves;
            r.leaves[i - 1] = s.add[r.leaves[i - 1]][r.leaves[i]];
            r.leaves.erase(r.leaves.begin() + i);
        }
        return r;
    }
    long blk = ipow(p, n - 1);
    std::vector<NestedTuple> blocks;
    for (long j = 0; j < p; ++j) {
        NestedTuple b{n - 1, p,
                      std::vector<long>(t.leaves.begin() + j * blk, t.leaves.begin() + (j + 1) * blk)};
        blocks.push_back(face_eval(s, n - 1, p, i, b));
    }
    std::vector<NestedTuple> out;
    if (i == 0)
        out.assign(blocks.begin() + 1, blocks.end());
    else if (i == p)
        out.assign(blocks.begin(), blocks.end() - 1);
    else {
        out = blocks;
        out[i - 1] = tuple_add(s, out[i - 1], out[i]);
        out.erase(out.begin() + i);
    }
    NestedTuple r{n, p - 1, {}};
    for (const auto& b : out) r.leaves.insert(r.leaves.end(), b.leaves.begin(), b.leaves.end());
    return r;
}

NestedTuple degen_eval(const FiniteRing& s, long n, long p, long i, const NestedTuple& t) {
    check_tuple(s, n, p, t);
    if (i < 0 || i > p) throw IndexOutOfRange("degeneracy index out of range");
    if (n == 0) return {0, p + 1, t.leaves};
    if (n == 1) {
        NestedTuple r{1, p + 1, t.leaves};
        r.leaves.insert(r.leaves.begin() + i, s.zero);
        return r;
    }
    long blk = ipow(p, n - 1);
    std::vector<NestedTuple> blocks;
    for (long j = 0; j < p; ++j) {
        NestedTuple b{n - 1, p,
                      std::vector<long>(t.leaves.begin() + j * blk, t.leaves.begin() + (j + 1) * blk)};
        blocks.push_back(degen_eval(s, n - 1, p, i, b));
    }
    blocks.insert(blocks.begin() + i, zero_tuple(s, n - 1, p + 1));
    NestedTuple r{n, p + 1, {}};
    for (const auto& b : blocks) r.leaves.insert(r.leaves.end(), b.leaves.begin(), b.leaves.end());
    return r;
}

SimplicialAbGroup bar(const SimplicialAbGroup& m) {
    SimplicialAbGroup b;
    b.coeff = m.coeff;
    b.truncation = m.truncation;
    b.exponent.resize(b.truncation + 1);
    b.face.resize(b.truncation + 1);
    b.degen.resize(b.truncation + 1);
    for (long p = 0; p <= b.truncation; ++p) b.exponent[p] = p * m.exponent[p];
    for (long p = 1; p <= b.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            b.face[p].push_back(face_pattern(p, i).kron(IntMatrix::identity(m.exponent[p - 1])) *
                                IntMatrix::identity(p).kron(m.face[p][i]));
    for (long p = 0; p < b.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            b.degen[p].push_back(degen_pattern(p, i).kron(IntMatrix::identity(m.exponent[p + 1])) *
                                 IntMatrix::identity(p).kron(m.degen[p][i]));
    return b;
}

SimplicialKModule bar_module(const SimplicialAlgebra& a) {
    const SimplicialKModule& m = a.mod;
    SimplicialKModule b;
    b.ring = m.ring;
    b.truncation = m.truncation;
    long T = m.truncation;
    b.dim.resize(T + 1);
    b.face.resize(T + 1);
    b.degen.resize(T + 1);
    for (long p = 0; p <= T; ++p) b.dim[p] = ipow(m.dim[p], p);
    for (long p = 1; p <= T; ++p)
        for (long i = 0; i <= p; ++i) {
            long d = m.dim[p];
            IntMatrix horiz;
            if (i == 0)
                horiz = a.aug[p].kron(IntMatrix::identity(ipow(d, p - 1)));
            else if (i == p)
                horiz = IntMatrix::identity(ipow(d, p - 1)).kron(a.aug[p]);
            else
                horiz = IntMatrix::identity(ipow(d, i - 1))
                            .kron(a.product[p])
                            .kron(IntMatrix::identity(ipow(d, p - 1 - i)));
            b.face[p].push_back(kron_pow(m.face[p][i], p - 1) * horiz);
        }
    for (long p = 0; p < T; ++p)
        for (long i = 0; i <= p; ++i) {
            long d2 = m.dim[p + 1];
            IntMatrix horiz = IntMatrix::identity(ipow(d2, i))
                                  .kron(a.unit[p + 1])
                                  .kron(IntMatrix::identity(ipow(d2, p - i)));
            b.degen[p].push_back(horiz * kron_pow(m.degen[p][i], p));
        }
    return b;
}

SimplicialAlgebra bar(const SimplicialAlgebra& a) {
    const SimplicialKModule& m = a.mod;
    SimplicialAlgebra b;
    b.mod = bar_module(a);
    long T = m.truncation;
    b.unit.resize(T + 1);
    b.aug.resize(T + 1);
    b.product.resize(T + 1);
    for (long p = 0; p <= T; ++p) {
        b.unit[p] = kron_pow(a.unit[p], p);
        b.aug[p] = kron_pow(a.aug[p], p);
        // componentwise product on the p-fold tensor power
        long d = m.dim[p], D = ipow(d, p);
        std::vector<std::vector<std::pair<long, mpz_class>>> pcols(d * d);
        for (const auto& t : a.product[p].triplets()) pcols[t.col].push_back({t.row, t.val});
        std::vector<IntMatrix::Triplet> ts;
        for (long x = 0; x < D; ++x)
            for (long y = 0; y < D; ++y) {
                std::vector<std::pair<long, mpz_class>> acc{{0, 1}};
                long xr = x, yr = y;
                std::vector<long> xd(p), yd(p); // digits, most significant first
                for (long j = p - 1; j >= 0; --j) {
                    xd[j] = xr % d;
                    xr /= d;
                    yd[j] = yr % d;
                    yr /= d;
                }
                for (long j = 0; j < p && !acc.empty(); ++j) {
                    std::vector<std::pair<long, mpz_class>> next;
                    for (const auto& [row, val] : acc)
                        for (const auto& [r2, v2] : pcols[xd[j] * d + yd[j]])
                            next.push_back({row * d + r2, val * v2});
                    acc = std::move(next);
                }
                for (const auto& [row, val] : acc) ts.push_back({row, x * D + y, val});
            }
        b.product[p] = IntMatrix::from_triplets(D, D * D, std::move(ts));
    }
    return b;
}

SimplicialAbGroup bar_simplicial_group(const FGAbelianGroup& g, long truncation) {
    if (truncation < 1) throw TruncationTooLow("bar needs truncation >= 1");
    return bar(SimplicialAbGroup::constant(g, truncation));
}

SimplicialAlgebra constant_algebra(const AugCommAlgebra& a, long truncation) {
    SimplicialAlgebra c;
    c.mod = SimplicialKModule::constant(a.k, truncation);
    for (long p = 0; p <= truncation; ++p) {
        c.mod.dim[p] = a.dim;
        c.product.push_back(a.product);
        c.unit.push_back(a.unit);
        c.aug.push_back(a.aug);
    }
    for (long p = 1; p <= truncation; ++p)
        for (long i = 0; i <= p; ++i) c.mod.face[p][i] = IntMatrix::identity(a.dim);
    for (long p = 0; p < truncation; ++p)
        for (long i = 0; i <= p; ++i) c.mod.degen[p][i] = IntMatrix::identity(a.dim);
    return c;
}

SimplicialKModule bar_simplicial_algebra(const AugCommAlgebra& a, long truncation) {
    if (truncation < 1) throw TruncationTooLow("bar needs truncation >= 1");
    return bar(constant_algebra(a, truncation)).mod;
}

SimplicialAbGroup iterated_bar(const FGAbelianGroup& g, long n, long truncation) {
    if (truncation < 1) throw TruncationTooLow("iterated_bar needs truncation >= 1");
    SimplicialAbGroup m = SimplicialAbGroup::constant(g, truncation);
    for (long k = 0; k < n; ++k) m = bar(m);
    return m;
}

SimplicialAlgebra iterated_bar(const SimplicialAlgebra& a, long n) {
    SimplicialAlgebra b = a;
    for (long k = 0; k < n; ++k) b = bar(b);
    return b;
}

FinSimplicialSet iterated_bar_set(const RingSpec& spec, long n, long truncation, long cap) {
    if (!spec.finite()) throw InfiniteLevel("set view of B^n needs a finite ring");
    const FiniteRing& s = *spec.ring;
    FinSimplicialSet x;
    x.truncation = truncation;
    x.card.resize(truncation + 1);
    x.face.resize(truncation + 1);
    x.degen.resize(truncation + 1);
    for (long p = 0; p <= truncation; ++p) x.card[p] = level_card(s.size, n, p, cap);
    for (long p = 1; p <= truncation; ++p)
        for (long i = 0; i <= p; ++i) {
            IndexMap f(x.card[p]);
            for (long idx = 0; idx < x.card[p]; ++idx)
                f[idx] = encode_tuple(s, face_eval(s, n, p, i, decode_tuple(s, n, p, idx)));
            x.face[p].push_back(std::move(f));
        }
    for (long p = 0; p < truncation; ++p)
        for (long i = 0; i <= p; ++i) {
            IndexMap f(x.card[p]);
            for (long idx = 0; idx < x.card[p]; ++idx)
                f[idx] = encode_tuple(s, degen_eval(s, n, p, i, decode_tuple(s, n, p, idx)));
            x.degen[p].push_back(std::move(f));
        }
    return x;
}

FinSimplicialSet nerve(const FiniteRing& s, long truncation) {
    RingSpec spec;
    spec.text = s.label;
    spec.additive = additive_group(s);
    spec.ring = s;
    return iterated_bar_set(spec, 1, truncation);
}

BisimplicialSet bar_bisimplicial_group(const FiniteRing& s, long truncation, long cap) {
    long T = truncation;
    BisimplicialSet b;
    b.truncation = T;
    b.card.assign(T + 1, std::vector<long>(T + 1));
    b.hface.assign(T + 1, std::vector<std::vector<IndexMap>>(T + 1));
    b.vface.assign(T + 1, std::vector<std::vector<IndexMap>>(T + 1));
    b.hdegen.assign(T + 1, std::vector<std::vector<IndexMap>>(T + 1));
    b.vdegen.assign(T + 1, std::vector<std::vector<IndexMap>>(T + 1));
    for (long p = 0; p <= T; ++p)
        for (long q = 0; q <= T; ++q) {
            long e = p * q, card = 1;
            for (long k = 0; k < e; ++k) {
                if (s.size > 1 && card > cap / s.size)
                    throw ResourceBudgetExceeded("bisimplicial level exceeds the simplex cap");
                card *= s.size;
            }
            b.card[p][q] = card;
        }
    // element at (p, q): p blocks, each a q-tuple over S, most significant first
    auto decode = [&](long idx, long p, long q) {
        std::vector<long> v(p * q);
        for (long j = p * q - 1; j >= 0; --j) {
            v[j] = idx % s.size;
            idx /= s.size;
        }
        return v;
    };
    auto encode = [&](const std::vector<long>& v) {
        long idx = 0;
        for (long x : v) idx = idx * s.size + x;
        return idx;
    };
    for (long p = 0; p <= T; ++p)
        for (long q = 0; q <= T; ++q) {
            for (long i = 0; p >= 1 && i <= p; ++i) {
                IndexMap f(b.card[p][q]);
                for (long idx = 0; idx < b.card[p][q]; ++idx) {
                    auto v = decode(idx, p, q);
                    std::vector<long> out;
                    for (long j = 0; j < p; ++j) {
                        if (i == 0 && j == 0) continue;
                        if (i == p && j == p - 1) continue;
                        if (i > 0 && i < p && j == i) continue;
                        for (long c = 0; c < q; ++c) {
                            long x = v[j * q + c];
                            if (i > 0 && i < p && j == i - 1) x = s.add[x][v[i * q + c]];
                            out.push_back(x);
                        }
                    }
                    f[idx] = encode(out);
                }
                b.hface[p][q].push_back(std::move(f));
            }
            for (long i = 0; q >= 1 && i <= q; ++i) {
                IndexMap f(b.card[p][q]);
                for (long idx = 0; idx < b.card[p][q]; ++idx) {
                    auto v = decode(idx, p, q);
                    std::vector<long> out;
                    for (long j = 0; j < p; ++j) {
                        NestedTuple blk{1, q, std::vector<long>(v.begin() + j * q,
                                                               v.begin() + (j + 1) * q)};
                        auto r = face_eval(s, 1, q, i, blk);
                        out.insert(out.end(), r.leaves.begin(), r.leaves.end());
                    }
                    f[idx] = encode(out);
                }
                b.vface[p][q].push_back(std::move(f));
            }
            for (long i = 0; p + 1 <= T && i <= p; ++i) {
                IndexMap f(b.card[p][q]);
                for (long idx = 0; idx < b.card[p][q]; ++idx) {
                    auto v = decode(idx, p, q);
                    std::vector<long> out;
                    for (long j = 0; j <= p; ++j) {
                        if (j == i) {
                            out.insert(out.end(), q, s.zero);
                            continue;
                        }
                        long src = j < i ? j : j - 1;
                        out.insert(out.end(), v.begin() + src * q, v.begin() + (src + 1) * q);
                    }
                    f[idx] = encode(out);
                }
                b.hdegen[p][q].push_back(std::move(f));
            }
            for (long i = 0; q + 1 <= T && i <= q; ++i) {
                IndexMap f(b.card[p][q]);
                for (long idx = 0; idx < b.card[p][q]; ++idx) {
                    auto v = decode(idx, p, q);
                    std::vector<long> out;
                    for (long j = 0; j < p; ++j) {
                        std::vector<long> blk(v.begin() + j * q, v.begin() + (j + 1) * q);
                        blk.insert(blk.begin() + i, s.zero);
                        out.insert(out.end(), blk.begin(), blk.end());
                    }
                    f[idx] = encode(out);
                }
                b.vdegen[p][q].push_back(std::move(f));
            }
        }
    return b;
}

BisimplicialModule bar_bisimplicial(const SimplicialAbGroup& m, const Coeff& ring) {
    long T = m.truncation;
    BisimplicialModule b;
    b.ring = ring;
    b.truncation = T;
    b.dim.assign(T + 1, std::vector<long>(T + 1));
    b.hface.assign(T + 1, std::vector<std::vector<IntMatrix>>(T + 1));
    b.vface.assign(T + 1, std::vector<std::vector<IntMatrix>>(T + 1));
    b.hdegen.assign(T + 1, std::vector<std::vector<IntMatrix>>(T + 1));
    b.vdegen.assign(T + 1, std::vector<std::vector<IntMatrix>>(T + 1));
    for (long p = 0; p <= T; ++p)
        for (long q = 0; q <= T; ++q) {
            long e = m.exponent[q];
            b.dim[p][q] = p * e;
            for (long i = 0; p >= 1 && i <= p; ++i)
                b.hface[p][q].push_back(face_pattern(p, i).kron(IntMatrix::identity(e)));
            for (long i = 0; q >= 1 && i <= q; ++i)
                b.vface[p][q].push_back(IntMatrix::identity(p).kron(m.face[q][i]));
            for (long i = 0; p + 1 <= T && i <= p; ++i)
                b.hdegen[p][q].push_back(degen_pattern(p, i).kron(IntMatrix::identity(e)));
            for (long i = 0; q + 1 <= T && i <= q; ++i)
                b.vdegen[p][q].push_back(IntMatrix::identity(p).kron(m.degen[q][i]));
        }
    return b;
}

BisimplicialModule linearize(const BisimplicialSet& x, const Coeff& ring) {
    long T = x.truncation;
    BisimplicialModule m;
    m.ring = ring;
    m.truncation = T;
    m.dim = x.card;
    m.hface.assign(T + 1, std::vector<std::vector<IntMatrix>>(T + 1));
    m.vface.assign(T + 1, std::vector<std::vector<IntMatrix>>(T + 1));
    m.hdegen.assign(T + 1, std::vector<std::vector<IntMatrix>>(T + 1));
    m.vdegen.assign(T + 1, std::vector<std::vector<IntMatrix>>(T + 1));
    for (long p = 0; p <= T; ++p)
        for (long q = 0; q <= T; ++q) {
            for (long i = 0; p >= 1 && i <= p; ++i)
                m.hface[p][q].push_back(index_map_matrix(x.hface[p][q][i], x.card[p - 1][q]));
            for (long i = 0; q >= 1 && i <= q; ++i)
                m.vface[p][q].push_back(index_map_matrix(x.vface[p][q][i], x.card[p][q - 1]));
            for (long i = 0; p + 1 <= T && i <= p; ++i)
                m.hdegen[p][q].push_back(index_map_matrix(x.hdegen[p][q][i], x.card[p + 1][q]));
            for (long i = 0; q + 1 <= T && i <= q; ++i)
                m.vdegen[p][q].push_back(index_map_matrix(x.vdegen[p][q][i], x.card[p][q + 1]));
        }
    return m;
}

} // namespace barcalc
