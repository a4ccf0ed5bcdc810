#pragma once
#include "barcalc/ring.hpp"
#include "barcalc/simplicial.hpp"

#include <vector>

namespace barcalc {

/// Per-level simplex budget for enumerated constructions; BARCALC_CAP
/// overrides the default of 2^22.
long simplex_cap();

/// Element of level p of the n-fold iterated bar of a finite ring: a complete
/// p-ary nesting of depth n with carrier leaves, flattened lexicographically on
/// the index path (outermost bar level first). depth 0 is a bare element.
struct NestedTuple {
    long depth = 0, level = 0;
    std::vector<long> leaves; // length level^depth

    bool operator==(const NestedTuple&) const = default;
};

/// Tuple <-> level index, leaf 0 most significant, base |S|.
NestedTuple decode_tuple(const FiniteRing& s, long n, long p, long index);
long encode_tuple(const FiniteRing& s, const NestedTuple& t);

/// Pointwise structure maps of iterated_bar without materializing levels.
NestedTuple face_eval(const FiniteRing& s, long n, long p, long i, const NestedTuple& t);
NestedTuple degen_eval(const FiniteRing& s, long n, long p, long i, const NestedTuple& t);

/// Levelwise addition of (B^n S)_p, leafwise in the additive group of S.
NestedTuple tuple_add(const FiniteRing& s, const NestedTuple& a, const NestedTuple& b);
NestedTuple zero_tuple(const FiniteRing& s, long n, long p);

/// Realized bar B = diag of the levelwise simplicial bar construction. Output
/// has the same truncation; level p of the output is (level p)^{x p or ⊗ p}.
SimplicialAbGroup bar(const SimplicialAbGroup& m);
SimplicialAlgebra bar(const SimplicialAlgebra& a);
/// Underlying module of bar(a), without the levelwise algebra structure on the
/// output (which grows much faster than the module itself).
SimplicialKModule bar_module(const SimplicialAlgebra& a);

/// Nerve of the additive group, as a symbolic simplicial abelian group.
SimplicialAbGroup bar_simplicial_group(const FGAbelianGroup& g, long truncation);
/// Reduced simplicial Hochschild object of an augmented commutative algebra.
SimplicialKModule bar_simplicial_algebra(const AugCommAlgebra& a, long truncation);
SimplicialAlgebra constant_algebra(const AugCommAlgebra& a, long truncation);

/// B^n of the additive group, symbolic: level p carries G^{p^n}.
SimplicialAbGroup iterated_bar(const FGAbelianGroup& g, long n, long truncation);
/// B^n of the algebra, with its levelwise algebra structure.
SimplicialAlgebra iterated_bar(const SimplicialAlgebra& a, long n);

/// Enumerated set view of B^n S. Throws InfiniteLevel for specs with a Z
/// factor, ResourceBudgetExceeded past the cap.
FinSimplicialSet iterated_bar_set(const RingSpec& s, long n, long truncation, long cap = simplex_cap());
FinSimplicialSet nerve(const FiniteRing& s, long truncation);

/// The bisimplicial object behind B^2: level (p, q) = (S^q)^p, horizontal bar
/// direction over the vertical nerve.
BisimplicialSet bar_bisimplicial_group(const FiniteRing& s, long truncation, long cap = simplex_cap());
BisimplicialModule linearize(const BisimplicialSet& x, const Coeff& ring);

/// The bisimplicial object behind bar(m) for a symbolic simplicial abelian
/// group, with G-coordinates read over the given base ring: level (p, q) has
/// p * exponent(q) coordinates.
BisimplicialModule bar_bisimplicial(const SimplicialAbGroup& m, const Coeff& ring);

} // namespace barcalc
