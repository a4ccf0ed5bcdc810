#pragma once
#include "barcalc/fgab.hpp"
#include "barcalc/intmatrix.hpp"

namespace barcalc {

/// U * A * V = S with S diagonal, d_1 | d_2 | ... | d_r, all >= 0, zeros trailing.
/// U and V are unimodular; Uinv and Vinv are their exact inverses.
struct SNFResult {
    IntMatrix U, S, V;
    IntMatrix Uinv, Vinv;

    long rank() const;
    /// Nonzero diagonal entries, in chain order.
    std::vector<mpz_class> diagonal() const;
};

/// Deterministic Smith normal form. Pivot rule: nonzero entry of minimal
/// absolute value in the remaining submatrix, ties broken by lowest (row, col).
SNFResult snf(const IntMatrix& A);

long rank_z(const IntMatrix& A);

/// Columns form a basis of the integer kernel of A.
IntMatrix kernel_z(const IntMatrix& A);

/// ker(d_out) / im(d_in) over Z, in canonical form.
/// Requires d_out * d_in = 0 (throws CompositionNotZero otherwise).
FGAbelianGroup homology_z(const IntMatrix& d_in, const IntMatrix& d_out);

/// Homology of the complex reduced mod m (coefficients Z/m), m >= 2.
/// Requires d_out * d_in = 0 mod m.
FGAbelianGroup homology_mod(const IntMatrix& d_in, const IntMatrix& d_out, long m);

/// Rank over F_p by sparse elimination.
long rank_fp(const FpMatrix& A);

/// Dimension over F_p of ker(d_out)/im(d_in) for matrices already reduced mod p.
long homology_dim_fp(const FpMatrix& d_in, const FpMatrix& d_out);

} // namespace barcalc
