#include "barcalc/chain.hpp"
#include "barcalc/errors.hpp"

#include <sstream>

namespace barcalc {

std::string Coeff::name() const {
    if (mod == 0) return "Z";
    if (field_notation) return "F" + std::to_string(mod);
    return "Z/" + std::to_string(mod);
}

Coeff parse_coeff(const std::string& text) {
    if (text == "Z") return Coeff::Z();
    if (text.rfind("Z/", 0) == 0) {
        long m = std::stol(text.substr(2));
        if (m < 2) throw ParseError("modulus must be >= 2 in '" + text + "'");
        return Coeff::mod_m(m);
    }
    if (text.size() > 1 && text[0] == 'F') {
        long p = std::stol(text.substr(1));
        if (!is_prime(p)) throw ParseError("'" + text + "' is not a prime field");
        return Coeff::fp(p);
    }
    throw ParseError("cannot parse coefficient ring '" + text + "'");
}

IntMatrix reduce_mod(const IntMatrix& a, const Coeff& ring) {
    if (ring.is_Z()) return a;
    std::vector<IntMatrix::Triplet> ts;
    for (const auto& t : a.triplets()) {
        mpz_class r = t.val % ring.mod;
        if (r < 0) r += ring.mod;
        if (r != 0) ts.push_back({t.row, t.col, r});
    }
    return IntMatrix::from_triplets(a.rows(), a.cols(), std::move(ts));
}

bool eq_mod(const IntMatrix& a, const IntMatrix& b, const Coeff& ring) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return reduce_mod(a - b, ring).is_zero();
}

FGAbelianGroup matrix_homology(const IntMatrix& d_in, const IntMatrix& d_out, const Coeff& ring) {
    if (ring.is_Z()) return homology_z(d_in, d_out);
    if (ring.is_prime_field()) {
        long dim = homology_dim_fp(FpMatrix::from_int_matrix(d_in, ring.mod),
                                   FpMatrix::from_int_matrix(d_out, ring.mod));
        std::vector<long> orders(dim, ring.mod);
        return FGAbelianGroup::from_cyclic_orders(orders);
    }
    return homology_mod(d_in, d_out, ring.mod);
}

const IntMatrix& ChainComplex::diff(long i) const {
    if (i < 1 || i > top_degree()) throw IndexOutOfRange("differential index out of range");
    return diffs[i];
}

IntMatrix ChainComplex::diff_or_zero(long i) const {
    if (i >= 1 && i <= top_degree()) return diffs[i];
    return IntMatrix::zero(rank(i - 1), rank(i));
}

void ChainComplex::validate() const {
    if (diffs.size() != ranks.size()) throw ShapeMismatch("chain complex: diffs/ranks mismatch");
    for (long i = 1; i <= top_degree(); ++i) {
        if (diffs[i].rows() != ranks[i - 1] || diffs[i].cols() != ranks[i])
            throw ShapeMismatch("chain complex: differential shape at degree " + std::to_string(i));
        if (i >= 2 && !reduce_mod(diffs[i - 1] * diffs[i], ring).is_zero())
            throw CompositionNotZero("chain complex: d*d != 0 at degree " + std::to_string(i));
    }
}

FGAbelianGroup ChainComplex::homology(long i, bool complete) const {
    if (i < 0 || i > top_degree()) throw TruncationTooLow("homology degree beyond truncation");
    if (i + 1 > top_degree() && !complete)
        throw TruncationTooLow("homology at degree " + std::to_string(i) +
                               " needs the complex one degree higher");
    return matrix_homology(diff_or_zero(i + 1), diff_or_zero(i), ring);
}

long ChainComplex::homology_dim_over_field(long i, bool complete) const {
    if (!ring.is_prime_field()) throw ShapeMismatch("field homology dims need a prime field");
    if (i < 0 || i > top_degree()) throw TruncationTooLow("homology degree beyond truncation");
    if (i + 1 > top_degree() && !complete)
        throw TruncationTooLow("homology dim needs the complex one degree higher");
    return homology_dim_fp(FpMatrix::from_int_matrix(diff_or_zero(i + 1), ring.mod),
                           FpMatrix::from_int_matrix(diff_or_zero(i), ring.mod));
}

void ChainMap::validate(long up_to) const {
    for (long i = 1; i <= up_to; ++i) {
        IntMatrix lhs = target->diff_or_zero(i) * maps[i];
        IntMatrix rhs = maps[i - 1] * source->diff_or_zero(i);
        if (!eq_mod(lhs, rhs, source->ring))
            throw CompositionNotZero("chain map does not commute with d at degree " +
                                     std::to_string(i));
    }
}

long tensor_summand_offset(const ChainComplex& a, const ChainComplex& b, long i, long j) {
    long off = 0;
    for (long k = 0; k < i; ++k) off += a.rank(k) * b.rank(i + j - k);
    return off;
}

ChainComplex tensor_complex(const ChainComplex& a, const ChainComplex& b, long up_to) {
    ChainComplex c;
    c.ring = a.ring;
    for (long t = 0; t <= up_to; ++t) {
        long r = 0;
        for (long i = 0; i <= t; ++i) r += a.rank(i) * b.rank(t - i);
        c.ranks.push_back(r);
    }
    c.diffs.push_back(IntMatrix::zero(0, c.ranks[0]));
    for (long t = 1; t <= up_to; ++t) {
        std::vector<IntMatrix::Triplet> ts;
        for (long i = 0; i <= t; ++i) {
            long j = t - i;
            if (a.rank(i) * b.rank(j) == 0) continue;
            long src = tensor_summand_offset(a, b, i, j);
            if (i >= 1) {
                // d_a ⊗ id into summand (i-1, j)
                long dst = tensor_summand_offset(a, b, i - 1, j);
                IntMatrix blk = a.diff_or_zero(i).kron(IntMatrix::identity(b.rank(j)));
                for (const auto& e : blk.triplets()) ts.push_back({dst + e.row, src + e.col, e.val});
            }
            if (j >= 1) {
                // (-1)^i id ⊗ d_b into summand (i, j-1)
                long dst = tensor_summand_offset(a, b, i, j - 1);
                IntMatrix blk = IntMatrix::identity(a.rank(i)).kron(b.diff_or_zero(j));
                mpz_class sign = (i % 2 == 0) ? 1 : -1;
                for (const auto& e : blk.triplets())
                    ts.push_back({dst + e.row, src + e.col, sign * e.val});
            }
        }
        c.diffs.push_back(IntMatrix::from_triplets(c.ranks[t - 1], c.ranks[t], std::move(ts)));
    }
    return c;
}

} // namespace barcalc
