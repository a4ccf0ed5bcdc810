#pragma once
#include "barcalc/fgab.hpp"
#include "barcalc/intmatrix.hpp"
#include "barcalc/snf.hpp"

#include <string>
#include <vector>

namespace barcalc {

/// Base ring of coefficients: Z (mod == 0) or Z/mod. F_p is Z/p with prime p,
/// remembered for display.
struct Coeff {
    long mod = 0;
    bool field_notation = false;

    static Coeff Z() { return {0, false}; }
    static Coeff mod_m(long m) { return {m, false}; }
    static Coeff fp(long p) { return {p, true}; }

    bool is_Z() const { return mod == 0; }
    bool is_prime_field() const { return mod >= 2 && is_prime(mod); }
    std::string name() const;
    bool operator==(const Coeff&) const = default;
};

/// Parse "Z" | "Z/m" | "Fp".
Coeff parse_coeff(const std::string& text);

/// Entrywise equality mod the coefficient ring (exact equality over Z).
bool eq_mod(const IntMatrix& a, const IntMatrix& b, const Coeff& ring);
/// Canonical representative: entries reduced to [0, mod) when mod != 0.
IntMatrix reduce_mod(const IntMatrix& a, const Coeff& ring);

/// ker(d_out)/im(d_in) over the coefficient ring, canonical form.
FGAbelianGroup matrix_homology(const IntMatrix& d_in, const IntMatrix& d_out, const Coeff& ring);

/// Nonnegatively graded chain complex, levelwise finitely generated free.
/// diff(i) maps degree i to degree i-1, stored for 1 <= i <= top_degree().
struct ChainComplex {
    Coeff ring;
    std::vector<long> ranks;
    std::vector<IntMatrix> diffs; // diffs[i] for i >= 1; diffs[0] is a placeholder 0 x ranks[0]

    long top_degree() const { return static_cast<long>(ranks.size()) - 1; }
    long rank(long i) const { return (i >= 0 && i <= top_degree()) ? ranks[i] : 0; }
    const IntMatrix& diff(long i) const;

    /// d(i) as a matrix even off the stored range (zero map of the right shape).
    IntMatrix diff_or_zero(long i) const;

    /// Throws unless diff(i-1) * diff(i) = 0 over the ring for all stored i.
    void validate() const;

    /// Homology at degree i; requires i + 1 <= top_degree() unless `complete`
    /// promises there is nothing above the stored top.
    FGAbelianGroup homology(long i, bool complete = false) const;
    long homology_dim_over_field(long i, bool complete = false) const;
};

/// Degree-shifted collection of matrices f_i : C_i -> D_i commuting with differentials.
struct ChainMap {
    const ChainComplex* source = nullptr;
    const ChainComplex* target = nullptr;
    std::vector<IntMatrix> maps; // maps[i] : source rank(i) -> target rank(i)

    /// Throws unless f d = d f over the ring in all stored degrees.
    void validate(long up_to) const;
};

/// Tensor product complex (C ⊗ D)_t = ⊕_{i+j=t} C_i ⊗ D_j, summands ordered by
/// ascending i, basis within a summand in Kronecker order.
ChainComplex tensor_complex(const ChainComplex& a, const ChainComplex& b, long up_to);

/// Offset of the (i, j) summand inside (a ⊗ b)_{i+j}.
long tensor_summand_offset(const ChainComplex& a, const ChainComplex& b, long i, long j);

} // namespace barcalc
