#pragma once
#include "barcalc/chain.hpp"
#include "barcalc/fgab.hpp"
#include "barcalc/intmatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace barcalc {

/// Finite commutative ring given by tables. Elements are indices 0..size-1.
struct FiniteRing {
    long size = 0;
    std::vector<std::vector<long>> add, mul;
    long zero = 0, one = 0;
    std::string label;

    long neg(long a) const; // additive inverse, found by table scan
    /// Exhaustive commutative-ring axioms; throws InvalidAlgebra on failure.
    void validate() const;

    static FiniteRing cyclic(long m);
    static FiniteRing product(const FiniteRing& a, const FiniteRing& b); // pair (x,y) = x*b.size + y
    static FiniteRing from_json_file(const std::string& path);
};

/// Additive group of a finite ring in canonical form, via the presentation
/// with one generator per element and relations e_a + e_b = e_{a+b}.
FGAbelianGroup additive_group(const FiniteRing& s);

/// "Z" | "Z/m" | "<spec> x <spec>" | "table:<path>". Z stays symbolic: no
/// finite carrier, only the additive group.
struct RingSpec {
    std::string text;
    FGAbelianGroup additive;
    std::optional<FiniteRing> ring; // absent iff a Z factor is present

    bool finite() const { return ring.has_value(); }
};

RingSpec parse_ring_spec(const std::string& text);

/// Augmented commutative algebra over the base ring, by structure constants on
/// a distinguished basis. product has Kronecker columns: column a*dim + b.
struct AugCommAlgebra {
    Coeff k;
    long dim = 0;
    IntMatrix product; // dim x dim^2
    IntMatrix unit;    // dim x 1
    IntMatrix aug;     // 1 x dim

    /// Commutativity, associativity, unit, and the algebra-map axioms for the
    /// augmentation, all as matrix identities mod k; throws InvalidAlgebra.
    void validate() const;

    static AugCommAlgebra base(const Coeff& k); // k itself
    static AugCommAlgebra group_algebra(const FiniteRing& s, const Coeff& k); // k[S, +]
    static AugCommAlgebra truncated_polynomial(const Coeff& k); // k[x]/x^2, eps(x) = 0
    static AugCommAlgebra from_json_file(const std::string& path);
};

} // namespace barcalc
