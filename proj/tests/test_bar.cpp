#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barcalc/bar.hpp"
#include "barcalc/errors.hpp"

#include <cstdio>
#include <fstream>
#include <random>

using namespace barcalc;

namespace {

// Independent Def-1.1 oracle for the nerve: faces drop/add adjacent entries,
// degeneracies insert the zero.
FinSimplicialSet nerve_oracle(const FiniteRing& s, long trunc) {
    FinSimplicialSet x;
    x.truncation = trunc;
    x.card.resize(trunc + 1);
    x.face.resize(trunc + 1);
    x.degen.resize(trunc + 1);
    long c = 1;
    for (long p = 0; p <= trunc; ++p, c *= s.size) x.card[p] = c;
    auto digits = [&](long idx, long p) {
        std::vector<long> g(p);
        for (long j = p - 1; j >= 0; --j) {
            g[j] = idx % s.size;
            idx /= s.size;
        }
        return g;
    };
    auto pack = [&](const std::vector<long>& g) {
        long idx = 0;
        for (long v : g) idx = idx * s.size + v;
        return idx;
    };
    for (long p = 1; p <= trunc; ++p)
        for (long i = 0; i <= p; ++i) {
            IndexMap f(x.card[p]);
            for (long t = 0; t < x.card[p]; ++t) {
                auto g = digits(t, p);
                std::vector<long> h;
                if (i == 0)
                    h.assign(g.begin() + 1, g.end());
                else if (i == p)
                    h.assign(g.begin(), g.end() - 1);
                else {
                    h = g;
                    h[i - 1] = s.add[h[i - 1]][h[i]];
                    h.erase(h.begin() + i);
                }
                f[t] = pack(h);
            }
            x.face[p].push_back(std::move(f));
        }
    for (long p = 0; p < trunc; ++p)
        for (long i = 0; i <= p; ++i) {
            IndexMap f(x.card[p]);
            for (long t = 0; t < x.card[p]; ++t) {
                auto g = digits(t, p);
                g.insert(g.begin() + i, s.zero);
                f[t] = pack(g);
            }
            x.degen[p].push_back(std::move(f));
        }
    return x;
}

RingSpec spec_of(const FiniteRing& s) {
    RingSpec spec;
    spec.text = s.label;
    spec.additive = additive_group(s);
    spec.ring = s;
    return spec;
}

} // namespace

TEST_CASE("cyclic ring tables satisfy the ring axioms; injected fault is caught") {
    for (long m : {1, 2, 4, 6}) FiniteRing::cyclic(m).validate();
    auto s = FiniteRing::cyclic(4);
    std::swap(s.mul[2][3], s.mul[2][2]);
    CHECK_THROWS_AS(s.validate(), InvalidAlgebra);
}

TEST_CASE("additive group decomposition") {
    CHECK(additive_group(FiniteRing::cyclic(6)).to_string() == "Z/6");
    CHECK(additive_group(FiniteRing::product(FiniteRing::cyclic(2), FiniteRing::cyclic(4)))
              .to_string() == "Z/2 + Z/4");
    CHECK(additive_group(FiniteRing::product(FiniteRing::cyclic(2), FiniteRing::cyclic(3)))
              .to_string() == "Z/6");
}

TEST_CASE("ring spec grammar") {
    auto a = parse_ring_spec("Z/2 x Z/4");
    CHECK(a.finite());
    CHECK(a.ring->size == 8);
    CHECK(a.additive.to_string() == "Z/2 + Z/4");
    a.ring->validate();

    auto z = parse_ring_spec("Z");
    CHECK_FALSE(z.finite());
    CHECK(z.additive.to_string() == "Z");
    CHECK(parse_ring_spec("Z x Z/2").additive.to_string() == "Z + Z/2");
    CHECK_THROWS_AS(parse_ring_spec("Q"), ParseError);
    CHECK_THROWS_AS(parse_ring_spec(""), ParseError);
}

TEST_CASE("ring table file round trip") {
    auto s = FiniteRing::cyclic(3);
    std::string path = "ring_z3.json";
    {
        std::ofstream out(path);
        out << "{\"size\":3,\"zero\":0,\"one\":1,"
            << "\"add\":[[0,1,2],[1,2,0],[2,0,1]],"
            << "\"mul\":[[0,0,0],[0,1,2],[0,2,1]]}";
    }
    auto t = FiniteRing::from_json_file(path);
    CHECK(t.add == s.add);
    CHECK(t.mul == s.mul);
    auto spec = parse_ring_spec("table:" + path);
    CHECK(spec.additive.to_string() == "Z/3");
    std::remove(path.c_str());
}

TEST_CASE("nerve matches the Def-1.1 oracle for |G| <= 6, p <= 4") {
    for (long m : {2, 3, 4, 5, 6}) {
        auto s = FiniteRing::cyclic(m);
        auto got = nerve(s, 4);
        auto want = nerve_oracle(s, 4);
        CHECK(got.card == want.card);
        CHECK(got.face == want.face);
        CHECK(got.degen == want.degen);
    }
    auto s = FiniteRing::product(FiniteRing::cyclic(2), FiniteRing::cyclic(3));
    auto got = nerve(s, 3);
    auto want = nerve_oracle(s, 3);
    CHECK(got.face == want.face);
    CHECK(got.degen == want.degen);
}

TEST_CASE("face_eval and degen_eval base cases") {
    auto z4 = FiniteRing::cyclic(4);
    // d_1(3, 2) = (1) in Z/4
    auto r = face_eval(z4, 1, 2, 1, {1, 2, {3, 2}});
    CHECK(r.leaves == std::vector<long>{1});
    // p = 1: both faces land in the unique 0-simplex
    CHECK(face_eval(z4, 1, 1, 0, {1, 1, {3}}).leaves.empty());
    CHECK(face_eval(z4, 1, 1, 1, {1, 1, {3}}).leaves.empty());
    // s_0(a) = (0, a)
    CHECK(degen_eval(z4, 1, 1, 0, {1, 1, {3}}).leaves == std::vector<long>{0, 3});
    CHECK(degen_eval(z4, 1, 1, 1, {1, 1, {3}}).leaves == std::vector<long>{3, 0});
}

TEST_CASE("depth-2 face composes the diagonal by hand") {
    auto z2 = FiniteRing::cyclic(2);
    for (long a = 0; a < 2; ++a)
        for (long b = 0; b < 2; ++b)
            for (long c = 0; c < 2; ++c)
                for (long d = 0; d < 2; ++d) {
                    auto r = face_eval(z2, 2, 2, 1, {2, 2, {a, b, c, d}});
                    CHECK(r.leaves == std::vector<long>{(a + b + c + d) % 2});
                }
}

TEST_CASE("degen then face at the same index is the identity") {
    auto s = FiniteRing::cyclic(3);
    std::mt19937 rng(7);
    for (long n = 1; n <= 3; ++n)
        for (long p = 0; p <= 2; ++p)
            for (int trial = 0; trial < 10; ++trial) {
                NestedTuple t = zero_tuple(s, n, p);
                for (auto& v : t.leaves) v = static_cast<long>(rng() % 3);
                for (long i = 0; i <= p; ++i)
                    CHECK(face_eval(s, n, p + 1, i, degen_eval(s, n, p, i, t)) == t);
            }
}

TEST_CASE("iterated bar set views satisfy the simplicial identities") {
    for (long m : {2, 3}) {
        auto spec = parse_ring_spec("Z/" + std::to_string(m));
        for (long n = 0; n <= 2; ++n) {
            long trunc = n == 2 ? 3 : 4;
            auto x = iterated_bar_set(spec, n, trunc);
            CHECK(verify_identities(x, trunc).ok());
        }
    }
    auto x = iterated_bar_set(parse_ring_spec("Z/2"), 3, 2);
    CHECK(verify_identities(x, 2).ok());
    CHECK(x.card[2] == 256);
}

TEST_CASE("set view cardinalities and caps") {
    auto spec = parse_ring_spec("Z/2");
    auto x = iterated_bar_set(spec, 2, 3);
    CHECK(x.card == std::vector<long>{1, 2, 16, 512});
    CHECK_THROWS_AS(iterated_bar_set(spec, 3, 3), ResourceBudgetExceeded);
    CHECK_THROWS_AS(iterated_bar_set(spec, 2, 3, 100), ResourceBudgetExceeded);
    CHECK_THROWS_AS(iterated_bar_set(parse_ring_spec("Z"), 1, 3), InfiniteLevel);
}

TEST_CASE("face_eval agrees with the symbolic matrices") {
    long m = 3;
    auto s = FiniteRing::cyclic(m);
    auto sym = iterated_bar(FGAbelianGroup::cyclic(m), 2, 3);
    auto set = iterated_bar_set(spec_of(s), 2, 3);
    for (long p = 1; p <= 3; ++p)
        for (long i = 0; i <= p; ++i)
            for (long idx = 0; idx < set.card[p]; ++idx) {
                auto t = decode_tuple(s, 2, p, idx);
                std::vector<mpz_class> v(t.leaves.begin(), t.leaves.end());
                auto w = sym.face[p][i].apply(v);
                auto want = decode_tuple(s, 2, p - 1, set.face[p][i][idx]);
                REQUIRE(w.size() == want.leaves.size());
                for (size_t j = 0; j < w.size(); ++j)
                    CHECK(w[j] % m == want.leaves[j]);
            }
}

TEST_CASE("symbolic iterated bar is an Eilenberg-MacLane model") {
    auto pis = homotopy_groups(iterated_bar(FGAbelianGroup::cyclic(5), 2, 4), 3);
    CHECK(pis[0].to_string() == "0");
    CHECK(pis[1].to_string() == "0");
    CHECK(pis[2].to_string() == "Z/5");
    CHECK(pis[3].to_string() == "0");

    auto piz = homotopy_groups(iterated_bar(FGAbelianGroup::cyclic(0), 2, 4), 3);
    CHECK(piz[2].to_string() == "Z");
    CHECK(piz[3].to_string() == "0");
}

TEST_CASE("symbolic bar structures pass verify_identities") {
    CHECK(verify_identities(bar_simplicial_group(FGAbelianGroup::cyclic(6), 4), 4).ok());
    CHECK(verify_identities(iterated_bar(FGAbelianGroup{1, {2}}, 2, 3), 3).ok());
    auto b2 = iterated_bar(FGAbelianGroup::cyclic(2), 2, 3);
    CHECK(b2.exponent == std::vector<long>{0, 1, 4, 9});
}

TEST_CASE("algebra validation") {
    AugCommAlgebra::truncated_polynomial(Coeff::fp(2)).validate();
    AugCommAlgebra::group_algebra(FiniteRing::cyclic(4), Coeff::fp(2)).validate();
    AugCommAlgebra::base(Coeff::fp(3)).validate();
    auto a = AugCommAlgebra::truncated_polynomial(Coeff::fp(2));
    a.aug = IntMatrix::from_triplets(1, 2, {{0, 0, 1}, {0, 1, 1}}); // eps(x) = 1 breaks mult
    CHECK_THROWS_AS(a.validate(), InvalidAlgebra);
}

TEST_CASE("algebra structure-constant file round trip") {
    std::string path = "alg_dual.json";
    {
        std::ofstream out(path);
        out << "{\"ring\":\"F2\",\"dim\":2,"
            << "\"product\":[[1,0,0,0],[0,1,1,0]],"
            << "\"unit\":[[1],[0]],\"aug\":[[1,0]]}";
    }
    auto a = AugCommAlgebra::from_json_file(path);
    CHECK(a.product == AugCommAlgebra::truncated_polynomial(Coeff::fp(2)).product);
    std::remove(path.c_str());
}

TEST_CASE("bar of an algebra: base cases from the definition") {
    auto a = AugCommAlgebra::truncated_polynomial(Coeff::fp(2));
    auto b = bar_simplicial_algebra(a, 3);
    CHECK(b.dim == std::vector<long>{1, 2, 4, 8});
    CHECK(verify_identities(b, 3).ok());
    // d_0 on B_1: 1 -> 1, x -> eps(x) = 0
    CHECK(b.face[1][0].at(0, 0) == 1);
    CHECK(b.face[1][0].at(0, 1) == 0);
    // d_1 on B_2 multiplies the factors: x (x) x -> x^2 = 0
    CHECK(b.face[2][1].select_cols({3}).is_zero());

    auto unit = bar_simplicial_algebra(AugCommAlgebra::base(Coeff::fp(2)), 3);
    CHECK(unit.dim == std::vector<long>{1, 1, 1, 1});
    for (long p = 1; p <= 3; ++p)
        for (long i = 0; i <= p; ++i) CHECK(unit.face[p][i] == IntMatrix::identity(1));
}

TEST_CASE("levelwise algebra axioms survive bar") {
    auto a = constant_algebra(AugCommAlgebra::group_algebra(FiniteRing::cyclic(4), Coeff::fp(2)), 3);
    auto b = bar(a);
    CHECK(verify_identities(b.mod, 3).ok());
    for (long p = 0; p <= 3; ++p) {
        AugCommAlgebra level{b.mod.ring, b.mod.dim[p], b.product[p], b.unit[p], b.aug[p]};
        level.validate();
    }
}

TEST_CASE("homotopy of B(F2[x]/x^2) has dimension 1 in each degree") {
    auto a = AugCommAlgebra::truncated_polynomial(Coeff::fp(2));
    auto n = normalized_chains(bar_simplicial_algebra(a, 5), 5);
    for (long i = 0; i <= 4; ++i) CHECK(n.complex.homology_dim_over_field(i) == 1);
}

TEST_CASE("bisimplicial bar of a group diagonalizes to the iterated bar") {
    auto s = FiniteRing::cyclic(2);
    auto b = bar_bisimplicial_group(s, 3);
    CHECK(verify_identities(b, 3).ok());
    auto d = diagonal(b);
    auto want = iterated_bar_set(spec_of(s), 2, 3);
    CHECK(d.card == want.card);
    CHECK(d.face == want.face);
    CHECK(d.degen == want.degen);
    auto lin = linearize(b, Coeff::fp(2));
    CHECK(verify_identities(lin, 3).ok());
}

TEST_CASE("set-level homology of B^1 and B^2 of Z/2") {
    auto spec = parse_ring_spec("Z/2");
    auto h1 = homology(iterated_bar_set(spec, 1, 6), Coeff::Z(), 5);
    std::vector<std::string> want{"Z", "Z/2", "0", "Z/2", "0", "Z/2"};
    for (long i = 0; i <= 5; ++i) CHECK(h1[i].to_string() == want[i]);

    auto x2 = iterated_bar_set(spec, 2, 4);
    auto n = normalized_chains(linearize(x2, Coeff::fp(2)), 4);
    std::vector<long> dims;
    for (long i = 0; i <= 3; ++i) dims.push_back(n.complex.homology_dim_over_field(i));
    CHECK(dims == std::vector<long>{1, 0, 1, 1});
}
