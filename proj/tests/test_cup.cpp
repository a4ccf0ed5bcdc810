#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barcalc/cup.hpp"
#include "barcalc/errors.hpp"
#include "barcalc/snf.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace barcalc;

namespace {

long ipow(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

NestedTuple random_tuple(const FiniteRing& s, long n, long p, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> pick(0, s.size - 1);
    NestedTuple t{n, p, std::vector<long>(ipow(p, n))};
    for (long& v : t.leaves) v = pick(rng);
    return t;
}

} // namespace

TEST_CASE("cup recursion agrees with its closed form") {
    std::mt19937_64 rng(7);
    std::vector<FiniteRing> rings = {FiniteRing::cyclic(2), FiniteRing::cyclic(3),
                                     FiniteRing::cyclic(4),
                                     FiniteRing::product(FiniteRing::cyclic(2), FiniteRing::cyclic(2))};
    for (const auto& s : rings)
        for (long n = 0; n <= 3; ++n)
            for (long m = 0; n + m <= 3; ++m)
                for (long p = 1; p <= 3; ++p) {
                    long ly = ipow(p, n), lx = ipow(p, m);
                    double combos = std::pow(double(s.size), double(ly + lx));
                    if (combos <= 200000) {
                        long cy = ipow(s.size, ly), cx = ipow(s.size, lx);
                        for (long a = 0; a < cy; ++a)
                            for (long b = 0; b < cx; ++b) {
                                auto y = decode_tuple(s, n, p, a), x = decode_tuple(s, m, p, b);
                                REQUIRE(cup_eval(s, n, m, p, y, x) ==
                                        cup_closed_form(s, n, m, p, y, x));
                            }
                    } else {
                        for (long t = 0; t < 200; ++t) {
                            auto y = random_tuple(s, n, p, rng), x = random_tuple(s, m, p, rng);
                            REQUIRE(cup_eval(s, n, m, p, y, x) == cup_closed_form(s, n, m, p, y, x));
                        }
                    }
                }
}

TEST_CASE("cup base case is the ring multiplication") {
    auto s = FiniteRing::cyclic(6);
    for (long a = 0; a < 6; ++a)
        for (long b = 0; b < 6; ++b) {
            NestedTuple y{0, 2, {a}}, x{0, 2, {b}};
            CHECK(cup_eval(s, 0, 0, 2, y, x).leaves == std::vector<long>{s.mul[a][b]});
        }
}

TEST_CASE("graded ring axioms hold for small cyclic rings") {
    for (long m : {2L, 4L, 6L}) {
        auto rep = check_graded_ring_axioms(FiniteRing::cyclic(m), 2, 3, 50000, 200);
        for (const auto& item : rep.items) {
            INFO(item.axiom, " n=", item.n, " m=", item.m, " witness=", item.witness);
            CHECK(item.pass);
            CHECK(item.checks > 0);
        }
        CHECK(rep.ok());
    }
}

TEST_CASE("a corrupted multiplication table is caught with a witness") {
    auto s = FiniteRing::cyclic(3);
    std::swap(s.mul[1][0], s.mul[1][1]);
    auto rep = check_graded_ring_axioms(s, 1, 2, 50000, 200);
    CHECK_FALSE(rep.ok());
    bool witnessed = false;
    for (const auto& item : rep.items)
        if (!item.pass) {
            CHECK_FALSE(item.witness.empty());
            witnessed = true;
        }
    CHECK(witnessed);
}

TEST_CASE("oversized domains fall back to seeded sampling and stay deterministic") {
    auto s = FiniteRing::cyclic(6);
    auto a = check_graded_ring_axioms(s, 2, 3, 1000, 50, 9);
    auto b = check_graded_ring_axioms(s, 2, 3, 1000, 50, 9);
    bool sampled = false;
    for (size_t i = 0; i < a.items.size(); ++i) {
        CHECK(a.items[i].checks == b.items[i].checks);
        CHECK(a.items[i].pass == b.items[i].pass);
        if (!a.items[i].exhaustive) sampled = true;
    }
    CHECK(sampled);
}

TEST_CASE("the basis identification is natural for Z/3 over F_3") {
    auto rep = naturality_check(FiniteRing::cyclic(3), Coeff::fp(3), 2, 3);
    for (const auto& item : rep.items) {
        INFO(item.name, " witness=", item.witness);
        CHECK(item.pass);
    }
    CHECK(rep.ok());
}

TEST_CASE("transposing the Kronecker order is witnessed") {
    auto rep = naturality_check(FiniteRing::cyclic(3), Coeff::fp(3), 1, 2, true);
    CHECK_FALSE(rep.ok());
    bool faces_failed = false;
    for (const auto& item : rep.items)
        if (!item.pass && item.name.find("faces") != std::string::npos) {
            CHECK_FALSE(item.witness.empty());
            faces_failed = true;
        }
    CHECK(faces_failed);
}

TEST_CASE("Hopf axioms for the levelwise group algebras of B Z/4") {
    for (long n : {0L, 1L}) {
        auto rep = hopf_checks(FiniteRing::cyclic(4), Coeff::fp(2), n, 3);
        for (const auto& item : rep.items) {
            INFO(item.name, " witness=", item.witness);
            CHECK(item.pass);
            CHECK(item.checks > 0);
        }
        CHECK(rep.ok());
    }
}

TEST_CASE("a corrupted addition table fails the Hopf suite with a witness") {
    auto s = FiniteRing::cyclic(3);
    std::swap(s.add[1][1], s.add[1][2]); // addition stops commuting
    auto rep = hopf_checks(s, Coeff::fp(3), 1, 2);
    CHECK_FALSE(rep.ok());
    bool witnessed = false;
    for (const auto& item : rep.items)
        if (!item.pass && !item.witness.empty()) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("degree-zero circle product recovers the multiplication table") {
    auto s = FiniteRing::cyclic(3);
    auto pr = homology_circle_product(s, Coeff::fp(3), 0, 0, 0, 0, 1);
    CHECK(pr.dim_left == 3);
    CHECK(pr.dim_right == 3);
    CHECK(pr.dim_target == 3);
    for (long a = 0; a < 3; ++a)
        for (long b = 0; b < 3; ++b)
            for (long r = 0; r < 3; ++r)
                CHECK(pr.matrix.at(r, a * 3 + b) == (r == s.mul[a][b] ? 1 : 0));
}

TEST_CASE("circle product H_1 x H_1 -> H_2 of the double bar of Z/2") {
    auto s = FiniteRing::cyclic(2);
    auto pr = homology_circle_product(s, Coeff::fp(2), 1, 1, 1, 1, 3, 10, 5);
    CHECK(pr.dim_left == 1);
    CHECK(pr.dim_right == 1);
    CHECK(pr.dim_target == 1);
    CHECK(pr.matrix.at(0, 0) == 1);
}

TEST_CASE("the generator of H_2(B^2 Z/2; F_2) is the known 2-chain") {
    // independent oracle: ((0,0),(1,0)) + ((0,1),(0,0)) is a nondegenerate
    // cycle and not a boundary, so it spans the one-dimensional H_2
    auto s = FiniteRing::cyclic(2);
    RingSpec spec{"Z/2", additive_group(s), s};
    auto kz = linearize(iterated_bar_set(spec, 2, 3), Coeff::fp(2));
    auto nz = normalized_chains(kz, 3);
    // level-2 tuples have four leaves; the chain above has full indices 2 and 4
    std::vector<long> full(16, 0);
    full[2] = 1;
    full[4] = 1;
    std::vector<mpz_class> z;
    for (long b : nz.basis[2]) z.push_back(full[b]);
    CHECK(std::count_if(z.begin(), z.end(), [](const mpz_class& v) { return v != 0; }) == 2);
    auto dz = nz.complex.diff(2).apply(z);
    for (const auto& e : dz) CHECK(e % 2 == 0);
    auto zmat = IntMatrix::from_dense({std::vector<mpz_class>(z)}).transpose();
    auto d3 = nz.complex.diff(3);
    CHECK(rank_fp(FpMatrix::from_int_matrix(d3.hstack(zmat), 2)) ==
          rank_fp(FpMatrix::from_int_matrix(d3, 2)) + 1);
    CHECK(nz.complex.homology_dim_over_field(2) == 1);
}

TEST_CASE("circle product rejects bad inputs") {
    auto s = FiniteRing::cyclic(2);
    CHECK_THROWS_AS(homology_circle_product(s, Coeff::Z(), 1, 1, 1, 1, 3), InvalidAlgebra);
    CHECK_THROWS_AS(homology_circle_product(s, Coeff::mod_m(4), 1, 1, 1, 1, 3), InvalidAlgebra);
    CHECK_THROWS_AS(homology_circle_product(s, Coeff::fp(2), 1, 1, 1, 1, 2), TruncationTooLow);
}

TEST_CASE("circle product is deterministic across runs") {
    auto s = FiniteRing::cyclic(2);
    auto a = homology_circle_product(s, Coeff::fp(2), 1, 1, 1, 1, 3, 4, 11);
    auto b = homology_circle_product(s, Coeff::fp(2), 1, 1, 1, 1, 3, 4, 23);
    CHECK(a.matrix == b.matrix);
}
