#include "barcalc/fgab.hpp"
#include "barcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace barcalc {

std::string FGAbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = 0; i < free_rank; ++i) {
        os << (first ? "" : " + ") << "Z";
        first = false;
    }
    for (long m : torsion) {
        os << (first ? "" : " + ") << "Z/" << m;
        first = false;
    }
    return os.str();
}

FGAbelianGroup FGAbelianGroup::cyclic(long m) {
    if (m == 0) return free(1);
    if (m == 1) return trivial();
    return {0, {m}};
}

namespace {
std::map<long, std::vector<long>> prime_power_parts(const std::vector<long>& orders) {
    // prime -> multiset of exponents (one entry per cyclic factor)
    std::map<long, std::vector<long>> parts;
    for (long m : orders) {
        if (m <= 1) continue;
        for (long p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                long e = 0;
                while (m % p == 0) { m /= p; ++e; }
                parts[p].push_back(e);
            }
        }
        if (m > 1) parts[m].push_back(1);
    }
    return parts;
}
} // namespace

FGAbelianGroup FGAbelianGroup::from_cyclic_orders(const std::vector<long>& orders) {
    FGAbelianGroup g;
    for (long m : orders)
        if (m == 0) ++g.free_rank;
    auto parts = prime_power_parts(orders);
    size_t chain = 0;
    for (auto& [p, es] : parts) {
        std::sort(es.begin(), es.end(), std::greater<long>());
        chain = std::max(chain, es.size());
    }
    // invariant factor #i (from the largest down) collects the i-th largest
    // prime power of each prime
    std::vector<long> factors(chain, 1);
    for (auto& [p, es] : parts) {
        for (size_t i = 0; i < es.size(); ++i) {
            long pw = 1;
            for (long k = 0; k < es[i]; ++k) pw *= p;
            factors[i] *= pw;
        }
    }
    std::reverse(factors.begin(), factors.end()); // ascending divisibility
    for (long f : factors)
        if (f >= 2) g.torsion.push_back(f);
    return g;
}

FGAbelianGroup FGAbelianGroup::direct_sum(const FGAbelianGroup& other) const {
    std::vector<long> orders = cyclic_orders();
    auto o2 = other.cyclic_orders();
    orders.insert(orders.end(), o2.begin(), o2.end());
    return from_cyclic_orders(orders);
}

std::vector<long> FGAbelianGroup::cyclic_orders() const {
    std::vector<long> orders(torsion);
    for (long i = 0; i < free_rank; ++i) orders.push_back(0);
    return orders;
}

FGAbelianGroup parse_group(const std::string& text) {
    std::vector<long> orders;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, '+')) {
        size_t a = token.find_first_not_of(" \t");
        if (a == std::string::npos) throw ParseError("empty group summand in '" + text + "'");
        size_t b = token.find_last_not_of(" \t");
        token = token.substr(a, b - a + 1);
        if (token == "0") continue;
        if (token == "Z") { orders.push_back(0); continue; }
        if (token.rfind("Z/", 0) == 0) {
            try {
                long m = std::stol(token.substr(2));
                if (m < 1) throw ParseError("bad modulus in '" + token + "'");
                orders.push_back(m);
                continue;
            } catch (const std::invalid_argument&) {}
        }
        throw ParseError("cannot parse group summand '" + token + "'");
    }
    return FGAbelianGroup::from_cyclic_orders(orders);
}

} // namespace barcalc
