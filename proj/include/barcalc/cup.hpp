#pragma once
#include "barcalc/bar.hpp"
#include "barcalc/dg.hpp"

#include <string>
#include <vector>

namespace barcalc {

/// The graded multiplication ⌣_{n,m} : (B^nS)_p x (B^mS)_p -> (B^{n+m}S)_p,
/// by the defining recursion: ⌣_{0,0} = μ, ⌣_{0,m+1}(s, (x_1..x_p)) =
/// (s ⌣ x_j)_j, ⌣_{n+1,m}((y_1..y_p), x) = (y_j ⌣ x)_j.
NestedTuple cup_eval(const FiniteRing& s, long n, long m, long p, const NestedTuple& y,
                     const NestedTuple& x);

/// Closed form: leaf at index path (I, J) is y_I · x_J, the Kronecker product
/// of the leaf vectors with the outer factor first.
NestedTuple cup_closed_form(const FiniteRing& s, long n, long m, long p, const NestedTuple& y,
                            const NestedTuple& x);

/// Per-axiom verification record. `exhaustive` is false when the domain was
/// past the evaluation budget and a seeded sample was used instead.
struct GradedRingReport {
    struct Item {
        std::string axiom;
        long n = 0, m = 0, p = 0;
        bool pass = true;
        bool exhaustive = true;
        long checks = 0;
        std::string witness;
    };
    std::vector<Item> items;
    bool ok() const;
};

/// Simplicial-map compatibility, associativity, units and distributivity of ⌣
/// for all degrees n + m <= n_max and levels p <= p_max.
GradedRingReport check_graded_ring_axioms(const FiniteRing& s, long n_max, long p_max,
                                          long budget = simplex_cap(), long samples = 2000,
                                          unsigned long seed = 1);

struct CheckReport {
    struct Item {
        std::string name;
        bool pass = true;
        bool exhaustive = true;
        long checks = 0;
        std::string witness;
    };
    std::vector<Item> items;
    bool ok() const;
};

/// The canonical basis identification k[S^{p^n}] = (k[S])^{⊗ p^n} intertwines
/// faces, degeneracies, multiplications, comultiplications and the linearized
/// ⌣ maps. The fault flag transposes the Kronecker index order in the ⌣
/// comparison, for testing the test.
CheckReport naturality_check(const FiniteRing& s, const Coeff& k, long n_max, long level_max,
                             bool transpose_kron_fault = false, long budget = simplex_cap(),
                             long samples = 2000, unsigned long seed = 1);

/// Bialgebra, counit, antipode and bicommutativity axioms of k[(B^nS)_p] for
/// levels p <= level_max.
CheckReport hopf_checks(const FiniteRing& s, const Coeff& k, long n, long level_max,
                        long budget = simplex_cap(), long samples = 2000, unsigned long seed = 1);

struct HomologyPairing {
    long n = 0, m = 0, i = 0, j = 0;
    long dim_left = 0, dim_right = 0, dim_target = 0;
    /// dim_target x (dim_left * dim_right), column u * dim_right + v, entries
    /// reduced mod the field.
    IntMatrix matrix;
};

/// H_i(B^nS; k) ⊗ H_j(B^mS; k) -> H_{i+j}(B^{n+m}S; k) via shuffle cross
/// product followed by k[⌣]. Throws InvalidAlgebra if a representative
/// perturbation by a boundary changes the matrix.
HomologyPairing homology_circle_product(const FiniteRing& s, const Coeff& k, long n, long m, long i,
                                        long j, long truncation, long perturbations = 10,
                                        unsigned long seed = 1);

} // namespace barcalc
