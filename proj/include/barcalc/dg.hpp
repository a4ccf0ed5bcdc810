#pragma once
#include "barcalc/chain.hpp"
#include "barcalc/ring.hpp"
#include "barcalc/simplicial.hpp"

#include <string>
#include <vector>

namespace barcalc {

/// Chain map that owns its endpoints, for maps between freshly built complexes.
struct OwnedChainMap {
    ChainComplex source, target;
    std::vector<IntMatrix> maps; // maps[i] : source rank(i) -> target rank(i)

    /// Throws CompositionNotZero unless f d = d f in all stored degrees.
    void validate() const;
};

/// Eilenberg-Zilber shuffle map N(X) ⊗ N(Y) -> N(X ⊗ Y): signed sum over
/// (p, q)-shuffles of composite degeneracies.
OwnedChainMap ez_shuffle(const SimplicialKModule& x, const SimplicialKModule& y, long up_to);

/// Alexander-Whitney map N(X ⊗ Y) -> N(X) ⊗ N(Y): front face ⊗ back face.
OwnedChainMap alexander_whitney(const SimplicialKModule& x, const SimplicialKModule& y, long up_to);

/// Augmented commutative dg algebra on a nonnegatively graded complex.
/// product[i][j] has Kronecker columns (x, y) -> column x * rank(j) + y.
struct DGAlgebra {
    ChainComplex complex;
    std::vector<std::vector<IntMatrix>> product; // product[i][j], i + j <= top_degree
    IntMatrix unit; // rank(0) x 1
    IntMatrix aug;  // 1 x rank(0)

    /// Leibniz, graded commutativity, associativity, unit, augmentation axioms,
    /// all exhaustive on the stored basis range; throws InvalidAlgebra.
    void validate() const;
};

/// An augmented commutative algebra viewed as a dg algebra in degree 0.
DGAlgebra dg_algebra_from(const AugCommAlgebra& a);

/// Reduced bar construction of an augmented cdga, truncated at total degree
/// up_to, with the shuffle product. Requires the unit to be a basis vector.
DGAlgebra dg_bar(const DGAlgebra& a, long up_to);

/// Condensation: doubly normalized bicomplex of a bisimplicial module,
/// totalized with d = d_h + (-1)^h d_v.
ChainComplex condense(const BisimplicialModule& x, long up_to);

struct DoldPuppeReport {
    std::vector<long> diag_dims, condense_dims; // H_i dims, i <= max degree
    bool ok() const { return diag_dims == condense_dims; }
};

/// Homology dimensions of N(diag X) versus condense(X), degrees <= up_to.
/// Needs a prime-field base ring and truncation >= up_to + 1.
DoldPuppeReport dold_puppe_compare(const BisimplicialModule& x, long up_to);

} // namespace barcalc
