#include "barcalc/ring.hpp"
#include "barcalc/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace barcalc {

long FiniteRing::neg(long a) const {
    for (long b = 0; b < size; ++b)
        if (add[a][b] == zero) return b;
    throw InvalidAlgebra(label + ": element " + std::to_string(a) + " has no additive inverse");
}

void FiniteRing::validate() const {
    auto fail = [&](const std::string& what) { throw InvalidAlgebra(label + ": " + what); };
    if (size <= 0) fail("empty carrier");
    if (static_cast<long>(add.size()) != size || static_cast<long>(mul.size()) != size)
        fail("table shape");
    for (long a = 0; a < size; ++a) {
        if (static_cast<long>(add[a].size()) != size || static_cast<long>(mul[a].size()) != size)
            fail("table shape");
        for (long b = 0; b < size; ++b)
            if (add[a][b] < 0 || add[a][b] >= size || mul[a][b] < 0 || mul[a][b] >= size)
                fail("table entry out of carrier");
    }
    for (long a = 0; a < size; ++a) {
        if (add[a][zero] != a) fail("zero is not an additive identity");
        if (mul[a][one] != a) fail("one is not a multiplicative identity");
        neg(a);
        for (long b = 0; b < size; ++b) {
            if (add[a][b] != add[b][a]) fail("addition not commutative");
            if (mul[a][b] != mul[b][a]) fail("multiplication not commutative");
            for (long c = 0; c < size; ++c) {
                if (add[add[a][b]][c] != add[a][add[b][c]]) fail("addition not associative");
                if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) fail("multiplication not associative");
                if (mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]) fail("not distributive");
            }
        }
    }
}

FiniteRing FiniteRing::cyclic(long m) {
    if (m < 1) throw ParseError("cyclic ring needs modulus >= 1");
    FiniteRing s;
    s.size = m;
    s.zero = 0;
    s.one = m == 1 ? 0 : 1;
    s.label = "Z/" + std::to_string(m);
    s.add.assign(m, std::vector<long>(m));
    s.mul.assign(m, std::vector<long>(m));
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) {
            s.add[a][b] = (a + b) % m;
            s.mul[a][b] = (a * b) % m;
        }
    return s;
}

FiniteRing FiniteRing::product(const FiniteRing& x, const FiniteRing& y) {
    FiniteRing s;
    s.size = x.size * y.size;
    s.zero = x.zero * y.size + y.zero;
    s.one = x.one * y.size + y.one;
    s.label = x.label + " x " + y.label;
    s.add.assign(s.size, std::vector<long>(s.size));
    s.mul.assign(s.size, std::vector<long>(s.size));
    for (long a = 0; a < s.size; ++a)
        for (long b = 0; b < s.size; ++b) {
            s.add[a][b] = x.add[a / y.size][b / y.size] * y.size + y.add[a % y.size][b % y.size];
            s.mul[a][b] = x.mul[a / y.size][b / y.size] * y.size + y.mul[a % y.size][b % y.size];
        }
    return s;
}

FiniteRing FiniteRing::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ring table file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("ring table file '" + path + "': " + e.what());
    }
    FiniteRing s;
    try {
        s.size = j.at("size").get<long>();
        s.add = j.at("add").get<std::vector<std::vector<long>>>();
        s.mul = j.at("mul").get<std::vector<std::vector<long>>>();
        s.zero = j.at("zero").get<long>();
        s.one = j.at("one").get<long>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("ring table file '" + path + "': " + e.what());
    }
    s.label = "table:" + path;
    s.validate();
    return s;
}

FGAbelianGroup additive_group(const FiniteRing& s) {
    std::vector<IntMatrix::Triplet> ts;
    for (long a = 0; a < s.size; ++a)
        for (long b = 0; b < s.size; ++b) {
            long c = a * s.size + b;
            // e_a + e_b - e_{a+b} = 0
            std::vector<std::pair<long, long>> terms{{a, 1}, {b, 1}, {s.add[a][b], -1}};
            for (auto [r, v] : terms) ts.push_back({r, c, v});
        }
    IntMatrix rel = IntMatrix::from_triplets(s.size, s.size * s.size, std::move(ts));
    return homology_z(rel, IntMatrix::zero(0, s.size));
}

namespace {
std::string strip(const std::string& t) {
    size_t a = t.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = t.find_last_not_of(" \t");
    return t.substr(a, b - a + 1);
}
} // namespace

RingSpec parse_ring_spec(const std::string& text) {
    // split on top-level " x "
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        size_t hit = text.find(" x ", pos);
        if (hit == std::string::npos) {
            parts.push_back(strip(text.substr(pos)));
            break;
        }
        parts.push_back(strip(text.substr(pos, hit - pos)));
        pos = hit + 3;
    }
    RingSpec spec;
    spec.text = text;
    bool has_z = false;
    std::optional<FiniteRing> acc;
    for (const auto& part : parts) {
        if (part == "Z") {
            has_z = true;
            spec.additive = spec.additive.direct_sum(FGAbelianGroup::free(1));
            continue;
        }
        FiniteRing factor;
        if (part.rfind("Z/", 0) == 0) {
            long m = 0;
            try {
                m = std::stol(part.substr(2));
            } catch (const std::exception&) {
                throw ParseError("bad ring spec component '" + part + "'");
            }
            factor = FiniteRing::cyclic(m);
        } else if (part.rfind("table:", 0) == 0) {
            factor = FiniteRing::from_json_file(part.substr(6));
        } else {
            throw ParseError("bad ring spec component '" + part + "'");
        }
        spec.additive = spec.additive.direct_sum(additive_group(factor));
        acc = acc ? FiniteRing::product(*acc, factor) : factor;
    }
    if (!has_z) {
        if (!acc) throw ParseError("empty ring spec");
        spec.ring = std::move(acc);
    }
    return spec;
}

void AugCommAlgebra::validate() const {
    auto fail = [](const std::string& what) { throw InvalidAlgebra(what); };
    long d = dim;
    if (product.rows() != d || product.cols() != d * d) fail("product shape");
    if (unit.rows() != d || unit.cols() != 1) fail("unit shape");
    if (aug.rows() != 1 || aug.cols() != d) fail("augmentation shape");
    IntMatrix id = IntMatrix::identity(d);
    // commutativity: column (a,b) = column (b,a)
    std::vector<long> swap_cols(d * d);
    for (long a = 0; a < d; ++a)
        for (long b = 0; b < d; ++b) swap_cols[a * d + b] = b * d + a;
    if (!eq_mod(product, product.select_cols(swap_cols), k)) fail("product not commutative");
    if (!eq_mod(product * product.kron(id), product * id.kron(product), k))
        fail("product not associative");
    if (!eq_mod(product * unit.kron(id), id, k)) fail("unit fails");
    if (!eq_mod(aug * unit, IntMatrix::identity(1), k)) fail("augmentation of the unit is not 1");
    if (!eq_mod(aug * product, aug.kron(aug), k)) fail("augmentation is not an algebra map");
}

AugCommAlgebra AugCommAlgebra::base(const Coeff& k) {
    AugCommAlgebra a;
    a.k = k;
    a.dim = 1;
    a.product = IntMatrix::identity(1);
    a.unit = IntMatrix::identity(1);
    a.aug = IntMatrix::identity(1);
    return a;
}

AugCommAlgebra AugCommAlgebra::group_algebra(const FiniteRing& s, const Coeff& k) {
    AugCommAlgebra a;
    a.k = k;
    a.dim = s.size;
    std::vector<IntMatrix::Triplet> pts, uts, ets;
    for (long x = 0; x < s.size; ++x)
        for (long y = 0; y < s.size; ++y) pts.push_back({s.add[x][y], x * s.size + y, 1});
    uts.push_back({s.zero, 0, 1});
    for (long x = 0; x < s.size; ++x) ets.push_back({0, x, 1});
    a.product = IntMatrix::from_triplets(s.size, s.size * s.size, std::move(pts));
    a.unit = IntMatrix::from_triplets(s.size, 1, std::move(uts));
    a.aug = IntMatrix::from_triplets(1, s.size, std::move(ets));
    return a;
}

AugCommAlgebra AugCommAlgebra::truncated_polynomial(const Coeff& k) {
    AugCommAlgebra a;
    a.k = k;
    a.dim = 2; // basis {1, x}
    a.product = IntMatrix::from_triplets(2, 4, {{0, 0, 1}, {1, 1, 1}, {1, 2, 1}});
    a.unit = IntMatrix::from_triplets(2, 1, {{0, 0, 1}});
    a.aug = IntMatrix::from_triplets(1, 2, {{0, 0, 1}});
    return a;
}

AugCommAlgebra AugCommAlgebra::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open algebra file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("algebra file '" + path + "': " + e.what());
    }
    AugCommAlgebra a;
    try {
        a.k = parse_coeff(j.at("ring").get<std::string>());
        a.dim = j.at("dim").get<long>();
        auto dense = [&](const char* key, long rows, long cols) {
            auto rowsv = j.at(key).get<std::vector<std::vector<long>>>();
            std::vector<IntMatrix::Triplet> ts;
            if (static_cast<long>(rowsv.size()) != rows)
                throw ParseError(std::string("algebra file: ") + key + " shape");
            for (long r = 0; r < rows; ++r) {
                if (static_cast<long>(rowsv[r].size()) != cols)
                    throw ParseError(std::string("algebra file: ") + key + " shape");
                for (long c = 0; c < cols; ++c)
                    if (rowsv[r][c] != 0) ts.push_back({r, c, rowsv[r][c]});
            }
            return IntMatrix::from_triplets(rows, cols, std::move(ts));
        };
        a.product = dense("product", a.dim, a.dim * a.dim);
        a.unit = dense("unit", a.dim, 1);
        a.aug = dense("aug", 1, a.dim);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("algebra file '" + path + "': " + e.what());
    }
    a.validate();
    return a;
}

} // namespace barcalc
