// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include "barcalc/cli.hpp"
#include "barcalc/errors.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace barcalc;

namespace {

long ipow(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

bool criterion_1(std::string& note) {
    struct Case {
        FGAbelianGroup g;
        std::string label;
    };
    std::vector<Case> cases = {{FGAbelianGroup::cyclic(2), "Z/2"},
                               {FGAbelianGroup::cyclic(5), "Z/5"},
                               {FGAbelianGroup::from_cyclic_orders({2, 4}), "Z/2 + Z/4"},
                               {FGAbelianGroup::cyclic(0), "Z"}};
    for (const auto& c : cases)
        for (long n = 0; n <= 2; ++n) {
            auto pis = homotopy_groups(iterated_bar(c.g, n, n + 2), n + 1);
            for (long i = 0; i <= n + 1; ++i) {
                auto want = i == n ? c.g : FGAbelianGroup::trivial();
                if (pis[i] != want) {
                    note = "pi_" + std::to_string(i) + "(B^" + std::to_string(n) + " " + c.label +
                           ") = " + pis[i].to_string();
                    return false;
                }
            }
        }
    auto pis = homotopy_groups(iterated_bar(FGAbelianGroup::cyclic(2), 3, 5), 4);
    for (long i = 0; i <= 4; ++i) {
        auto want = i == 3 ? FGAbelianGroup::cyclic(2) : FGAbelianGroup::trivial();
        if (pis[i] != want) {
            note = "pi_" + std::to_string(i) + "(B^3 Z/2) = " + pis[i].to_string();
            return false;
        }
    }
    note = "K(G,n) for 4 groups, n <= 2, plus B^3 Z/2 through degree 4";
    return true;
}

bool criterion_2(std::string& note) {
    auto kx = linearize(nerve(FiniteRing::cyclic(2), 6), Coeff::Z());
    auto un = unnormalized_chains(kx, 6);
    auto nc = normalized_chains(kx, 6);
    std::vector<std::string> want = {"Z", "Z/2", "0", "Z/2", "0", "Z/2"};
    for (long i = 0; i <= 5; ++i) {
        auto a = un.homology(i).to_string(), b = nc.complex.homology(i).to_string();
        if (a != want[i] || b != want[i]) {
            note = "H_" + std::to_string(i) + " = " + a + " / " + b;
            return false;
        }
    }
    note = "unnormalized-SNF oracle and normalized complex both give [Z,Z/2,0,Z/2,0,Z/2]";
    return true;
}

bool criterion_3(std::string& note) {
    std::vector<FiniteRing> rings = {FiniteRing::cyclic(2), FiniteRing::cyclic(3),
                                     FiniteRing::product(FiniteRing::cyclic(2), FiniteRing::cyclic(2))};
    long pairs = 0;
    for (const auto& s : rings)
        for (long p : {2L, 3L}) {
            auto kx = linearize(nerve(s, 5), Coeff::fp(p));
            auto nc = normalized_chains(kx, 5);
            auto un = unnormalized_chains(kx, 5);
            for (long i = 0; i <= 4; ++i, ++pairs)
                if (nc.complex.homology_dim_over_field(i) != un.homology_dim_over_field(i)) {
                    note = s.label + " over F" + std::to_string(p) + " at degree " +
                           std::to_string(i);
                    return false;
                }
        }
    note = std::to_string(pairs) + " degreewise comparisons across 3 rings and 2 primes";
    return true;
}

bool criterion_4(std::string& note) {
    std::mt19937_64 rng(41);
    std::vector<FiniteRing> rings = {FiniteRing::cyclic(2), FiniteRing::cyclic(3),
                                     FiniteRing::cyclic(4),
                                     FiniteRing::product(FiniteRing::cyclic(2), FiniteRing::cyclic(2))};
    long exhaustive = 0, sampled = 0;
    for (const auto& s : rings)
        for (long n = 0; n <= 3; ++n)
            for (long m = 0; n + m <= 3; ++m)
                for (long p = 1; p <= 3; ++p) {
                    long ly = ipow(p, n), lx = ipow(p, m);
                    long total = 1;
                    bool fits = true;
                    for (long q = 0; q < ly + lx && fits; ++q) {
                        if (total > 500000 / s.size) fits = false;
                        total *= s.size;
                    }
                    auto check = [&](const NestedTuple& y, const NestedTuple& x) {
                        if (cup_eval(s, n, m, p, y, x) == cup_closed_form(s, n, m, p, y, x))
                            return true;
                        std::ostringstream w;
                        w << s.label << " (n,m,p)=(" << n << "," << m << "," << p << ")";
                        note = w.str();
                        return false;
                    };
                    if (fits) {
                        long cy = ipow(s.size, ly), cx = ipow(s.size, lx);
                        for (long a = 0; a < cy; ++a)
                            for (long b = 0; b < cx; ++b, ++exhaustive)
                                if (!check(decode_tuple(s, n, p, a), decode_tuple(s, m, p, b)))
                                    return false;
                    } else {
                        std::uniform_int_distribution<long> pick(0, s.size - 1);
                        for (long t = 0; t < 500; ++t, ++sampled) {
                            NestedTuple y{n, p, std::vector<long>(ly)}, x{m, p, std::vector<long>(lx)};
                            for (long& v : y.leaves) v = pick(rng);
                            for (long& v : x.leaves) v = pick(rng);
                            if (!check(y, x)) return false;
                        }
                    }
                }
    note = std::to_string(exhaustive) + " exhaustive + " + std::to_string(sampled) +
           " sampled evaluations, zero mismatches";
    return true;
}

bool criterion_5(std::string& note) {
    long items = 0, exhaustive = 0;
    for (long mm : {2L, 4L, 6L}) {
        auto rep = check_graded_ring_axioms(FiniteRing::cyclic(mm), 2, 3);
        if (!rep.ok()) {
            for (const auto& it : rep.items)
                if (!it.pass) note = "Z/" + std::to_string(mm) + ": " + it.axiom + " " + it.witness;
            return false;
        }
        for (const auto& it : rep.items) {
            ++items;
            if (it.exhaustive) ++exhaustive;
        }
    }
    note = std::to_string(items) + " axiom families over Z/2, Z/4, Z/6 (" +
           std::to_string(exhaustive) + " fully exhaustive), zero counterexamples";
    return true;
}

bool criterion_6(std::string& note) {
    auto rep = naturality_check(FiniteRing::cyclic(3), Coeff::fp(3), 2, 3);
    if (!rep.ok()) {
        for (const auto& it : rep.items)
            if (!it.pass) note = it.name + ": " + it.witness;
        return false;
    }
    auto fault = naturality_check(FiniteRing::cyclic(3), Coeff::fp(3), 1, 2, true);
    if (fault.ok()) {
        note = "transposed Kronecker order went unnoticed";
        return false;
    }
    note = "all intertwining checks pass for S = Z/3, k = F_3; injected transposition is caught";
    return true;
}

bool criterion_7(std::string& note) {
    auto pr = homology_circle_product(FiniteRing::cyclic(2), Coeff::fp(2), 1, 1, 1, 1, 3, 10, 17);
    if (pr.dim_left != 1 || pr.dim_right != 1 || pr.dim_target != 1 || pr.matrix.at(0, 0) != 1) {
        note = "pairing matrix is not the 1x1 identity";
        return false;
    }
    note = "H_1 x H_1 -> H_2(B^2 Z/2; F_2) is an isomorphism; stable under 10 perturbations";
    return true;
}

bool criterion_8(std::string& note) {
    auto a = AugCommAlgebra::truncated_polynomial(Coeff::fp(2));
    auto nc = normalized_chains(bar_simplicial_algebra(a, 5), 5);
    auto b = dg_bar(dg_algebra_from(a), 5);
    for (long i = 0; i <= 4; ++i) {
        long simp = nc.complex.homology_dim_over_field(i);
        long dg = b.complex.homology_dim_over_field(i);
        if (simp != 1 || dg != 1) {
            note = "degree " + std::to_string(i) + ": simplicial " + std::to_string(simp) +
                   ", dg " + std::to_string(dg);
            return false;
        }
    }
    note = "pi_i(B(F_2[x]/x^2)) = H_i(dg bar) = 1-dimensional for i <= 4";
    return true;
}

bool criterion_9(std::string& note) {
    for (long mm : {2L, 3L}) {
        auto x = linearize(nerve(FiniteRing::cyclic(mm), 3), Coeff::Z());
        auto ez = ez_shuffle(x, x, 3);
        auto aw = alexander_whitney(x, x, 3);
        for (long d = 0; d <= 3; ++d)
            if (!(aw.maps[d] * ez.maps[d] == IntMatrix::identity(ez.source.rank(d)))) {
                note = "nerve(Z/" + std::to_string(mm) + ") at degree " + std::to_string(d);
                return false;
            }
    }
    note = "exact matrix identity on N(X) tensor N(X) for nerve(Z/2) and nerve(Z/3), degrees <= 3";
    return true;
}

bool criterion_10(std::string& note) {
    for (long p : {2L, 3L}) {
        auto m = bar_simplicial_group(FGAbelianGroup::cyclic(p), 4);
        auto rep = dold_puppe_compare(bar_bisimplicial(m, Coeff::fp(p)), 3);
        if (!rep.ok()) {
            note = "Z/" + std::to_string(p) + ": diag vs condense dimensions differ";
            return false;
        }
    }
    note = "N(diag) and condensation homology dimensions agree, degrees <= 3, for Z/2 and Z/3";
    return true;
}

bool criterion_11(std::string& note) {
    for (long n = 0; n <= 1; ++n) {
        auto rep = hopf_checks(FiniteRing::cyclic(4), Coeff::fp(2), n, 3);
        if (!rep.ok()) {
            for (const auto& it : rep.items)
                if (!it.pass) note = "B^" + std::to_string(n) + ": " + it.name;
            return false;
        }
    }
    note = "bialgebra, counit, antipode and bicommutativity pass on k[B^n Z/4], n <= 1, levels <= 3";
    return true;
}

bool criterion_12(std::string& note) {
    auto strip = [](ResultDocument d) {
        d.doc.erase("timings");
        return d.doc.dump();
    };
    RunConfig h;
    h.command = "em-homology";
    h.ring = "Z/2";
    h.coeff = "F2";
    h.n = 2;
    h.max_degree = 3;
    RunConfig v;
    v.command = "verify";
    v.ring = "Z/6";
    v.suite = "axioms";
    v.nmax = 2;
    v.pmax = 2;
    v.cap = 5000;
    v.samples = 100;
    RunConfig ct;
    ct.command = "cup-table";
    ct.ring = "Z/2";
    ct.coeff = "F2";
    if (strip(cmd_em_homology(h)) != strip(cmd_em_homology(h)) ||
        strip(cmd_verify(v)) != strip(cmd_verify(v)) ||
        strip(cmd_cup_table(ct)) != strip(cmd_cup_table(ct))) {
        note = "rerun produced different bytes";
        return false;
    }
    auto a = cmd_em_homology(h), b = cmd_em_homology(h);
    if (a.doc["determinism_hash"] != b.doc["determinism_hash"]) {
        note = "determinism hash drifted";
        return false;
    }
    note = "byte-identical result documents (modulo timings) across reruns of 3 commands";
    return true;
}

} // namespace

int main() {
    struct Criterion {
        const char* title;
        bool (*run)(std::string&);
    };
    std::vector<Criterion> cs = {
        {"Eilenberg-Mac Lane property of B^n", criterion_1},
        {"integer homology of K(Z/2,1)", criterion_2},
        {"normalized vs unnormalized mod-p homology", criterion_3},
        {"cup recursion vs closed form", criterion_4},
        {"graded ring axioms", criterion_5},
        {"naturality of the basis identification", criterion_6},
        {"circle-product nontriviality", criterion_7},
        {"Hochschild consistency", criterion_8},
        {"AW after EZ is the identity", criterion_9},
        {"Dold-Puppe comparison", criterion_10},
        {"Hopf-structure suite", criterion_11},
        {"determinism of result documents", criterion_12},
    };
    int failures = 0;
    for (size_t i = 0; i < cs.size(); ++i) {
        std::string note;
        bool okv = false;
        try {
            okv = cs[i].run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        if (!okv) ++failures;
        std::printf("criterion %2zu [%s]: %s — %s\n", i + 1, okv ? "PASS" : "FAIL", cs[i].title,
                    note.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
