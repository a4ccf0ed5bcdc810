#pragma once
#include "barcalc/chain.hpp"
#include "barcalc/fgab.hpp"
#include "barcalc/intmatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace barcalc {

using IndexMap = std::vector<long>; // function between finite levels, by index

/// Simplicial set with finitely many simplices in each level up to a
/// mandatory truncation. Simplices are indices into a canonical enumeration.
struct FinSimplicialSet {
    long truncation = 0;
    std::vector<long> card; // card[p], p <= truncation
    // face[p][i] : level p -> level p-1 (1 <= p <= truncation, 0 <= i <= p)
    std::vector<std::vector<IndexMap>> face;
    // degen[p][i] : level p -> level p+1 (0 <= p < truncation, 0 <= i <= p)
    std::vector<std::vector<IndexMap>> degen;

    static FinSimplicialSet constant(long points, long truncation);
    bool is_degenerate(long p, long simplex) const; // x == s_i(d_i x) for some i
};

/// Simplicial abelian group, levelwise G^{exponent(p)} for a fixed coefficient
/// group G; structure maps are integer matrices acting on G-coordinate vectors.
struct SimplicialAbGroup {
    FGAbelianGroup coeff;
    long truncation = 0;
    std::vector<long> exponent;
    std::vector<std::vector<IntMatrix>> face;  // face[p][i] : exponent(p) -> exponent(p-1)
    std::vector<std::vector<IntMatrix>> degen; // degen[p][i] : exponent(p) -> exponent(p+1)

    static SimplicialAbGroup constant(const FGAbelianGroup& g, long truncation);
};

/// Simplicial k-module with a distinguished basis per level; structure maps are
/// integer matrices read mod the base ring.
struct SimplicialKModule {
    Coeff ring;
    long truncation = 0;
    std::vector<long> dim;
    std::vector<std::vector<IntMatrix>> face;
    std::vector<std::vector<IntMatrix>> degen;

    static SimplicialKModule constant(const Coeff& ring, long truncation);
};

/// Simplicial augmented commutative algebra: a SimplicialKModule whose levels
/// carry a commutative product (as structure constants), unit and augmentation,
/// all intertwined by the structure maps.
struct SimplicialAlgebra {
    SimplicialKModule mod;
    std::vector<IntMatrix> product; // product[p] : dim_p * dim_p -> dim_p, Kronecker columns
    std::vector<IntMatrix> unit;    // dim_p x 1
    std::vector<IntMatrix> aug;     // 1 x dim_p
};

struct BisimplicialSet {
    long truncation = 0;
    std::vector<std::vector<long>> card; // card[p][q]
    // hface[p][q][i] : (p,q) -> (p-1,q), i <= p; vface[p][q][i] : (p,q) -> (p,q-1), i <= q
    std::vector<std::vector<std::vector<IndexMap>>> hface, vface;
    std::vector<std::vector<std::vector<IndexMap>>> hdegen, vdegen;
};

struct BisimplicialModule {
    Coeff ring;
    long truncation = 0;
    std::vector<std::vector<long>> dim;
    std::vector<std::vector<std::vector<IntMatrix>>> hface, vface, hdegen, vdegen;
};

/// One simplicial-identity violation, with enough data to locate it.
struct IdentityViolation {
    std::string family; // e.g. "d_i d_j = d_{j-1} d_i"
    long p = 0, i = 0, j = 0;
    long witness = -1; // simplex index for set-flavor checks, -1 for matrix checks
};

struct IdentityReport {
    std::vector<IdentityViolation> violations;
    long checks = 0;
    bool ok() const { return violations.empty(); }
};

IdentityReport verify_identities(const FinSimplicialSet& x, long up_to);
IdentityReport verify_identities(const SimplicialAbGroup& x, long up_to);
IdentityReport verify_identities(const SimplicialKModule& x, long up_to);
IdentityReport verify_identities(const BisimplicialSet& x, long up_to);
IdentityReport verify_identities(const BisimplicialModule& x, long up_to);

/// Levelwise product, componentwise structure maps. Pair (a, b) at level p is
/// index a * card_Y(p) + b.
FinSimplicialSet cartesian_product(const FinSimplicialSet& x, const FinSimplicialSet& y);

/// Levelwise tensor product, Kronecker structure maps.
SimplicialKModule tensor_product(const SimplicialKModule& x, const SimplicialKModule& y);

FinSimplicialSet diagonal(const BisimplicialSet& x);
SimplicialKModule diagonal(const BisimplicialModule& x);

/// Basis-map matrix of an index map: column x carries a 1 in row f[x].
IntMatrix index_map_matrix(const IndexMap& f, long target_card);

/// Free k-module on the simplices; face/degeneracy matrices are the induced
/// basis maps. The coalgebra structure (Δx = x ⊗ x, counit 1) is canonical for
/// any basis-indexed module and is used where comonoid data is needed.
SimplicialKModule linearize(const FinSimplicialSet& x, const Coeff& ring);

/// Normalized chains: quotient by the span of degenerate basis elements, which
/// for basis-indexed modules is a basis selection.
struct NormalizedChains {
    ChainComplex complex;
    std::vector<std::vector<long>> basis; // basis[i]: retained level-i coordinates
    /// Projection of a full level-i coordinate vector onto the retained coordinates.
    IntMatrix projection(long i, long full_dim) const;
};

NormalizedChains normalized_chains(const SimplicialKModule& m, long up_to);
NormalizedChains normalized_chains(const SimplicialAbGroup& m, long up_to); // integer complex
ChainComplex unnormalized_chains(const SimplicialKModule& m, long up_to);
ChainComplex unnormalized_chains(const SimplicialAbGroup& m, long up_to);

/// pi_0..pi_{i_max}, computed from the normalized Moore complex factor-by-factor
/// over the cyclic decomposition of the coefficient group.
std::vector<FGAbelianGroup> homotopy_groups(const SimplicialAbGroup& m, long i_max);

/// H_0..H_{i_max} of the linearization.
std::vector<FGAbelianGroup> homology(const FinSimplicialSet& x, const Coeff& coeff, long i_max);

} // namespace barcalc
