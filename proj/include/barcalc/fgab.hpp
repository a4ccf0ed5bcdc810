#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace barcalc {

/// Finitely generated abelian group in canonical form: Z^free_rank + Z/m_1 + ... + Z/m_t
/// with m_1 | m_2 | ... and every m_i >= 2. Two groups are equal iff the fields are equal.
struct FGAbelianGroup {
    long free_rank = 0;
    std::vector<long> torsion; // invariant factors, ascending divisibility

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const FGAbelianGroup&) const = default;

    // "0", "Z", "Z/6", "Z + Z/2 + Z/4", ...
    std::string to_string() const;

    static FGAbelianGroup trivial() { return {}; }
    static FGAbelianGroup free(long rank) { return {rank, {}}; }
    static FGAbelianGroup cyclic(long m); // m == 0 means Z, m == 1 means trivial

    /// Canonical form of a direct sum of cyclic groups of the given orders
    /// (0 = infinite cyclic), reassembled into an invariant-factor chain.
    static FGAbelianGroup from_cyclic_orders(const std::vector<long>& orders);

    FGAbelianGroup direct_sum(const FGAbelianGroup& other) const;

    /// Orders of the cyclic factors in the canonical decomposition, torsion
    /// first in chain order, then free_rank zeros.
    std::vector<long> cyclic_orders() const;
};

/// Parse "Z", "0", "Z/6", "Z + Z/2" (any order of summands; result canonical).
FGAbelianGroup parse_group(const std::string& text);

} // namespace barcalc
