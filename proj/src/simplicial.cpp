#include "barcalc/simplicial.hpp"
#include "barcalc/errors.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace barcalc {

namespace {

IndexMap compose_maps(const IndexMap& after, const IndexMap& before) {
    IndexMap out(before.size());
    for (size_t x = 0; x < before.size(); ++x) out[x] = after[before[x]];
    return out;
}

std::optional<long> map_mismatch(const IndexMap& a, const IndexMap& b) {
    for (size_t x = 0; x < a.size(); ++x)
        if (a[x] != b[x]) return static_cast<long>(x);
    return std::nullopt;
}

IndexMap identity_map(long n) {
    IndexMap m(n);
    std::iota(m.begin(), m.end(), 0);
    return m;
}

// Shared walk over the five simplicial-identity families. The callables
// abstract over index-map and matrix flavors.
template <class M, class FaceF, class DegenF, class IdentF, class CompF, class EqF>
IdentityReport check_identities(long up_to, long truncation, FaceF face, DegenF degen, IdentF ident,
                                CompF comp, EqF eq) {
    IdentityReport rep;
    auto check = [&](const char* fam, long p, long i, long j, const M& lhs, const M& rhs) {
        ++rep.checks;
        if (auto w = eq(lhs, rhs)) rep.violations.push_back({fam, p, i, j, *w});
    };
    for (long p = 0; p <= up_to; ++p) {
        if (p >= 2)
            for (long j = 1; j <= p; ++j)
                for (long i = 0; i < j; ++i)
                    check("d_i d_j = d_{j-1} d_i", p, i, j, comp(face(p - 1, i), face(p, j)),
                          comp(face(p - 1, j - 1), face(p, i)));
        if (p + 2 <= truncation)
            for (long j = 0; j <= p; ++j)
                for (long i = 0; i <= j; ++i)
                    check("s_i s_j = s_{j+1} s_i", p, i, j, comp(degen(p + 1, i), degen(p, j)),
                          comp(degen(p + 1, j + 1), degen(p, i)));
        if (p + 1 <= truncation)
            for (long j = 0; j <= p; ++j)
                for (long i = 0; i <= p + 1; ++i) {
                    M lhs = comp(face(p + 1, i), degen(p, j));
                    if (i == j || i == j + 1)
                        check("d_j s_j = id = d_{j+1} s_j", p, i, j, lhs, ident(p));
                    else if (i < j)
                        check("d_i s_j = s_{j-1} d_i", p, i, j, lhs,
                              comp(degen(p - 1, j - 1), face(p, i)));
                    else
                        check("d_i s_j = s_j d_{i-1}", p, i, j, lhs,
                              comp(degen(p - 1, j), face(p, i - 1)));
                }
    }
    return rep;
}

template <class FaceF, class DegenF, class DimF>
IdentityReport check_identities_matrix(long up_to, long truncation, const Coeff& ring, FaceF face,
                                       DegenF degen, DimF dim) {
    return check_identities<IntMatrix>(
        up_to, truncation, face, degen, [&](long p) { return IntMatrix::identity(dim(p)); },
        [](const IntMatrix& a, const IntMatrix& b) { return a * b; },
        [&](const IntMatrix& a, const IntMatrix& b) -> std::optional<long> {
            if (eq_mod(a, b, ring)) return std::nullopt;
            return -1;
        });
}

} // namespace

FinSimplicialSet FinSimplicialSet::constant(long points, long truncation) {
    FinSimplicialSet x;
    x.truncation = truncation;
    x.card.assign(truncation + 1, points);
    x.face.resize(truncation + 1);
    x.degen.resize(truncation + 1);
    for (long p = 1; p <= truncation; ++p) x.face[p].assign(p + 1, identity_map(points));
    for (long p = 0; p < truncation; ++p) x.degen[p].assign(p + 1, identity_map(points));
    return x;
}

bool FinSimplicialSet::is_degenerate(long p, long simplex) const {
    for (long i = 0; i < p; ++i)
        if (degen[p - 1][i][face[p][i][simplex]] == simplex) return true;
    return false;
}

SimplicialAbGroup SimplicialAbGroup::constant(const FGAbelianGroup& g, long truncation) {
    SimplicialAbGroup m;
    m.coeff = g;
    m.truncation = truncation;
    m.exponent.assign(truncation + 1, 1);
    m.face.resize(truncation + 1);
    m.degen.resize(truncation + 1);
    for (long p = 1; p <= truncation; ++p) m.face[p].assign(p + 1, IntMatrix::identity(1));
    for (long p = 0; p < truncation; ++p) m.degen[p].assign(p + 1, IntMatrix::identity(1));
    return m;
}

SimplicialKModule SimplicialKModule::constant(const Coeff& ring, long truncation) {
    SimplicialKModule m;
    m.ring = ring;
    m.truncation = truncation;
    m.dim.assign(truncation + 1, 1);
    m.face.resize(truncation + 1);
    m.degen.resize(truncation + 1);
    for (long p = 1; p <= truncation; ++p) m.face[p].assign(p + 1, IntMatrix::identity(1));
    for (long p = 0; p < truncation; ++p) m.degen[p].assign(p + 1, IntMatrix::identity(1));
    return m;
}

IdentityReport verify_identities(const FinSimplicialSet& x, long up_to) {
    if (up_to > x.truncation) throw TruncationTooLow("verify_identities beyond truncation");
    return check_identities<IndexMap>(
        up_to, x.truncation, [&](long p, long i) { return x.face[p][i]; },
        [&](long p, long i) { return x.degen[p][i]; }, [&](long p) { return identity_map(x.card[p]); },
        compose_maps, map_mismatch);
}

IdentityReport verify_identities(const SimplicialAbGroup& x, long up_to) {
    if (up_to > x.truncation) throw TruncationTooLow("verify_identities beyond truncation");
    return check_identities_matrix(
        up_to, x.truncation, Coeff::Z(), [&](long p, long i) { return x.face[p][i]; },
        [&](long p, long i) { return x.degen[p][i]; }, [&](long p) { return x.exponent[p]; });
}

IdentityReport verify_identities(const SimplicialKModule& x, long up_to) {
    if (up_to > x.truncation) throw TruncationTooLow("verify_identities beyond truncation");
    return check_identities_matrix(
        up_to, x.truncation, x.ring, [&](long p, long i) { return x.face[p][i]; },
        [&](long p, long i) { return x.degen[p][i]; }, [&](long p) { return x.dim[p]; });
}

IdentityReport verify_identities(const BisimplicialSet& x, long up_to) {
    if (up_to > x.truncation) throw TruncationTooLow("verify_identities beyond truncation");
    IdentityReport rep;
    auto merge = [&](IdentityReport sub, const std::string& tag) {
        rep.checks += sub.checks;
        for (auto& v : sub.violations) {
            v.family = tag + v.family;
            rep.violations.push_back(v);
        }
    };
    for (long q = 0; q <= up_to; ++q)
        merge(check_identities<IndexMap>(
                  up_to, x.truncation, [&](long p, long i) { return x.hface[p][q][i]; },
                  [&](long p, long i) { return x.hdegen[p][q][i]; },
                  [&](long p) { return identity_map(x.card[p][q]); }, compose_maps, map_mismatch),
              "horizontal " );
    for (long p = 0; p <= up_to; ++p)
        merge(check_identities<IndexMap>(
                  up_to, x.truncation, [&](long q, long i) { return x.vface[p][q][i]; },
                  [&](long q, long i) { return x.vdegen[p][q][i]; },
                  [&](long q) { return identity_map(x.card[p][q]); }, compose_maps, map_mismatch),
              "vertical ");
    // the two directions commute
    auto cross = [&](const char* fam, long p, long q, long i, long j, const IndexMap& a,
                     const IndexMap& b) {
        ++rep.checks;
        if (auto w = map_mismatch(a, b)) rep.violations.push_back({fam, p, i, j, *w});
    };
    for (long p = 0; p <= up_to; ++p)
        for (long q = 0; q <= up_to; ++q) {
            for (long i = 0; p >= 1 && i <= p; ++i) {
                for (long j = 0; q >= 1 && j <= q; ++j)
                    cross("hface vface commute", p, q, i, j,
                          compose_maps(x.vface[p - 1][q][j], x.hface[p][q][i]),
                          compose_maps(x.hface[p][q - 1][i], x.vface[p][q][j]));
                for (long j = 0; q + 1 <= x.truncation && j <= q; ++j)
                    cross("hface vdegen commute", p, q, i, j,
                          compose_maps(x.vdegen[p - 1][q][j], x.hface[p][q][i]),
                          compose_maps(x.hface[p][q + 1][i], x.vdegen[p][q][j]));
            }
            for (long i = 0; p + 1 <= x.truncation && i <= p; ++i) {
                for (long j = 0; q >= 1 && j <= q; ++j)
                    cross("hdegen vface commute", p, q, i, j,
                          compose_maps(x.vface[p + 1][q][j], x.hdegen[p][q][i]),
                          compose_maps(x.hdegen[p][q - 1][i], x.vface[p][q][j]));
                for (long j = 0; q + 1 <= x.truncation && j <= q; ++j)
                    cross("hdegen vdegen commute", p, q, i, j,
                          compose_maps(x.vdegen[p + 1][q][j], x.hdegen[p][q][i]),
                          compose_maps(x.hdegen[p][q + 1][i], x.vdegen[p][q][j]));
            }
        }
    return rep;
}

IdentityReport verify_identities(const BisimplicialModule& x, long up_to) {
    if (up_to > x.truncation) throw TruncationTooLow("verify_identities beyond truncation");
    IdentityReport rep;
    auto merge = [&](IdentityReport sub, const std::string& tag) {
        rep.checks += sub.checks;
        for (auto& v : sub.violations) {
            v.family = tag + v.family;
            rep.violations.push_back(v);
        }
    };
    for (long q = 0; q <= up_to; ++q)
        merge(check_identities_matrix(
                  up_to, x.truncation, x.ring, [&](long p, long i) { return x.hface[p][q][i]; },
                  [&](long p, long i) { return x.hdegen[p][q][i]; },
                  [&](long p) { return x.dim[p][q]; }),
              "horizontal ");
    for (long p = 0; p <= up_to; ++p)
        merge(check_identities_matrix(
                  up_to, x.truncation, x.ring, [&](long q, long i) { return x.vface[p][q][i]; },
                  [&](long q, long i) { return x.vdegen[p][q][i]; },
                  [&](long q) { return x.dim[p][q]; }),
              "vertical ");
    auto cross = [&](const char* fam, long p, long i, long j, const IntMatrix& a,
                     const IntMatrix& b) {
        ++rep.checks;
        if (!eq_mod(a, b, x.ring)) rep.violations.push_back({fam, p, i, j, -1});
    };
    for (long p = 1; p <= up_to; ++p)
        for (long q = 1; q <= up_to; ++q)
            for (long i = 0; i <= p; ++i)
                for (long j = 0; j <= q; ++j)
                    cross("hface vface commute", p, i, j,
                          x.vface[p - 1][q][j] * x.hface[p][q][i],
                          x.hface[p][q - 1][i] * x.vface[p][q][j]);
    return rep;
}

FinSimplicialSet cartesian_product(const FinSimplicialSet& x, const FinSimplicialSet& y) {
    if (x.truncation != y.truncation)
        throw TruncationMismatch("cartesian_product: unequal truncations");
    FinSimplicialSet z;
    z.truncation = x.truncation;
    z.card.resize(z.truncation + 1);
    z.face.resize(z.truncation + 1);
    z.degen.resize(z.truncation + 1);
    for (long p = 0; p <= z.truncation; ++p) z.card[p] = x.card[p] * y.card[p];
    auto pairwise = [&](const IndexMap& f, const IndexMap& g, long ycard_src, long ycard_dst) {
        IndexMap out(f.size() * ycard_src);
        for (size_t a = 0; a < f.size(); ++a)
            for (long b = 0; b < ycard_src; ++b)
                out[a * ycard_src + b] = f[a] * ycard_dst + g[b];
        return out;
    };
    for (long p = 1; p <= z.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            z.face[p].push_back(pairwise(x.face[p][i], y.face[p][i], y.card[p], y.card[p - 1]));
    for (long p = 0; p < z.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            z.degen[p].push_back(pairwise(x.degen[p][i], y.degen[p][i], y.card[p], y.card[p + 1]));
    return z;
}

SimplicialKModule tensor_product(const SimplicialKModule& x, const SimplicialKModule& y) {
    if (x.truncation != y.truncation) throw TruncationMismatch("tensor_product: unequal truncations");
    if (!(x.ring == y.ring)) throw ShapeMismatch("tensor_product: base ring mismatch");
    SimplicialKModule z;
    z.ring = x.ring;
    z.truncation = x.truncation;
    z.dim.resize(z.truncation + 1);
    z.face.resize(z.truncation + 1);
    z.degen.resize(z.truncation + 1);
    for (long p = 0; p <= z.truncation; ++p) z.dim[p] = x.dim[p] * y.dim[p];
    for (long p = 1; p <= z.truncation; ++p)
        for (long i = 0; i <= p; ++i) z.face[p].push_back(x.face[p][i].kron(y.face[p][i]));
    for (long p = 0; p < z.truncation; ++p)
        for (long i = 0; i <= p; ++i) z.degen[p].push_back(x.degen[p][i].kron(y.degen[p][i]));
    return z;
}

FinSimplicialSet diagonal(const BisimplicialSet& x) {
    FinSimplicialSet z;
    z.truncation = x.truncation;
    z.card.resize(z.truncation + 1);
    z.face.resize(z.truncation + 1);
    z.degen.resize(z.truncation + 1);
    for (long p = 0; p <= z.truncation; ++p) z.card[p] = x.card[p][p];
    for (long p = 1; p <= z.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            z.face[p].push_back(compose_maps(x.hface[p][p - 1][i], x.vface[p][p][i]));
    for (long p = 0; p < z.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            z.degen[p].push_back(compose_maps(x.hdegen[p][p + 1][i], x.vdegen[p][p][i]));
    return z;
}

SimplicialKModule diagonal(const BisimplicialModule& x) {
    SimplicialKModule z;
    z.ring = x.ring;
    z.truncation = x.truncation;
    z.dim.resize(z.truncation + 1);
    z.face.resize(z.truncation + 1);
    z.degen.resize(z.truncation + 1);
    for (long p = 0; p <= z.truncation; ++p) z.dim[p] = x.dim[p][p];
    for (long p = 1; p <= z.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            z.face[p].push_back(x.hface[p][p - 1][i] * x.vface[p][p][i]);
    for (long p = 0; p < z.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            z.degen[p].push_back(x.hdegen[p][p + 1][i] * x.vdegen[p][p][i]);
    return z;
}

IntMatrix index_map_matrix(const IndexMap& f, long target_card) {
    std::vector<IntMatrix::Triplet> ts;
    for (size_t x = 0; x < f.size(); ++x) ts.push_back({f[x], static_cast<long>(x), 1});
    return IntMatrix::from_triplets(target_card, static_cast<long>(f.size()), std::move(ts));
}

SimplicialKModule linearize(const FinSimplicialSet& x, const Coeff& ring) {
    SimplicialKModule m;
    m.ring = ring;
    m.truncation = x.truncation;
    m.dim = x.card;
    m.face.resize(m.truncation + 1);
    m.degen.resize(m.truncation + 1);
    for (long p = 1; p <= m.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            m.face[p].push_back(index_map_matrix(x.face[p][i], x.card[p - 1]));
    for (long p = 0; p < m.truncation; ++p)
        for (long i = 0; i <= p; ++i)
            m.degen[p].push_back(index_map_matrix(x.degen[p][i], x.card[p + 1]));
    return m;
}

namespace {

// Coordinates spanned by degeneracy images at each level. Requires every
// degeneracy column to be a signed basis vector, which holds for all
// constructions in this library (checked).
std::vector<std::vector<bool>> degenerate_marks(const std::vector<long>& dims,
                                                const std::vector<std::vector<IntMatrix>>& degen,
                                                long up_to) {
    std::vector<std::vector<bool>> marks(up_to + 1);
    for (long p = 0; p <= up_to; ++p) marks[p].assign(dims[p], false);
    for (long p = 1; p <= up_to; ++p) {
        for (const IntMatrix& s : degen[p - 1]) {
            std::vector<long> count(s.cols(), 0);
            for (const auto& t : s.triplets()) {
                if (!(t.val == 1 || t.val == -1))
                    throw ShapeMismatch("normalization needs signed-basis degeneracy columns");
                ++count[t.col];
                marks[p][t.row] = true;
            }
            for (long c = 0; c < s.cols(); ++c)
                if (count[c] != 1)
                    throw ShapeMismatch("normalization needs signed-basis degeneracy columns");
        }
    }
    return marks;
}

template <class M>
NormalizedChains normalized_impl(const M& m, const std::vector<long>& dims, const Coeff& ring,
                                 long up_to) {
    if (up_to > m.truncation) throw TruncationTooLow("normalized_chains beyond truncation");
    auto marks = degenerate_marks(dims, m.degen, up_to);
    NormalizedChains n;
    n.complex.ring = ring;
    n.basis.resize(up_to + 1);
    for (long p = 0; p <= up_to; ++p) {
        for (long c = 0; c < dims[p]; ++c)
            if (!marks[p][c]) n.basis[p].push_back(c);
        n.complex.ranks.push_back(static_cast<long>(n.basis[p].size()));
    }
    n.complex.diffs.push_back(IntMatrix::zero(0, n.complex.ranks[0]));
    for (long p = 1; p <= up_to; ++p) {
        IntMatrix d = IntMatrix::zero(dims[p - 1], dims[p]);
        for (long i = 0; i <= p; ++i) {
            if (i % 2 == 0)
                d = d + m.face[p][i];
            else
                d = d - m.face[p][i];
        }
        IntMatrix nd = reduce_mod(d.select_rows(n.basis[p - 1]).select_cols(n.basis[p]), ring);
        n.complex.diffs.push_back(std::move(nd));
    }
    n.complex.validate();
    return n;
}

template <class M>
ChainComplex unnormalized_impl(const M& m, const std::vector<long>& dims, const Coeff& ring,
                               long up_to) {
    if (up_to > m.truncation) throw TruncationTooLow("unnormalized_chains beyond truncation");
    ChainComplex c;
    c.ring = ring;
    for (long p = 0; p <= up_to; ++p) c.ranks.push_back(dims[p]);
    c.diffs.push_back(IntMatrix::zero(0, c.ranks[0]));
    for (long p = 1; p <= up_to; ++p) {
        IntMatrix d = IntMatrix::zero(dims[p - 1], dims[p]);
        for (long i = 0; i <= p; ++i) {
            if (i % 2 == 0)
                d = d + m.face[p][i];
            else
                d = d - m.face[p][i];
        }
        c.diffs.push_back(reduce_mod(d, ring));
    }
    c.validate();
    return c;
}

} // namespace

IntMatrix NormalizedChains::projection(long i, long full_dim) const {
    return IntMatrix::identity(full_dim).select_rows(basis[i]);
}

NormalizedChains normalized_chains(const SimplicialKModule& m, long up_to) {
    return normalized_impl(m, m.dim, m.ring, up_to);
}

NormalizedChains normalized_chains(const SimplicialAbGroup& m, long up_to) {
    return normalized_impl(m, m.exponent, Coeff::Z(), up_to);
}

ChainComplex unnormalized_chains(const SimplicialKModule& m, long up_to) {
    return unnormalized_impl(m, m.dim, m.ring, up_to);
}

ChainComplex unnormalized_chains(const SimplicialAbGroup& m, long up_to) {
    return unnormalized_impl(m, m.exponent, Coeff::Z(), up_to);
}

std::vector<FGAbelianGroup> homotopy_groups(const SimplicialAbGroup& m, long i_max) {
    if (m.truncation < i_max + 1) throw TruncationTooLow("homotopy_groups needs truncation >= i_max + 1");
    NormalizedChains n = normalized_chains(m, i_max + 1);
    std::vector<FGAbelianGroup> pis;
    for (long i = 0; i <= i_max; ++i) {
        FGAbelianGroup pi;
        for (long o : m.coeff.cyclic_orders()) {
            FGAbelianGroup part =
                (o == 0) ? homology_z(n.complex.diff_or_zero(i + 1), n.complex.diff_or_zero(i))
                         : homology_mod(n.complex.diff_or_zero(i + 1), n.complex.diff_or_zero(i), o);
            pi = pi.direct_sum(part);
        }
        pis.push_back(pi);
    }
    return pis;
}

std::vector<FGAbelianGroup> homology(const FinSimplicialSet& x, const Coeff& coeff, long i_max) {
    if (x.truncation < i_max + 1) throw TruncationTooLow("homology needs truncation >= i_max + 1");
    NormalizedChains n = normalized_chains(linearize(x, coeff), i_max + 1);
    std::vector<FGAbelianGroup> hs;
    for (long i = 0; i <= i_max; ++i) hs.push_back(n.complex.homology(i));
    return hs;
}

} // namespace barcalc
