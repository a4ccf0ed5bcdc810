#include "barcalc/cup.hpp"

#include "barcalc/errors.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

namespace barcalc {

namespace {

long ipow(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

void check_operand(const FiniteRing& s, long n, long p, const NestedTuple& t) {
    if (t.depth != n || t.level != p || static_cast<long>(t.leaves.size()) != ipow(p, n))
        throw ShapeMismatch("tuple shape does not match its declared degree and level");
    for (long v : t.leaves)
        if (v < 0 || v >= s.size) throw IndexOutOfRange("leaf outside the ring carrier");
}

std::string tuple_str(const NestedTuple& t) {
    std::ostringstream out;
    out << "[";
    for (size_t j = 0; j < t.leaves.size(); ++j) out << (j ? "," : "") << t.leaves[j];
    out << "]";
    return out.str();
}

/// Iterate `fn` over tuples of the given depths at level p, exhaustively when
/// the combined leaf domain fits the budget and by seeded sampling otherwise.
/// `fn` returns false on a violated identity; iteration stops there.
template <class Fn>
void sweep(const FiniteRing& s, const std::vector<long>& depths, long p, long budget, long samples,
           std::mt19937_64& rng, bool& exhaustive, long& checks, bool& failed, Fn&& fn) {
    if (failed) return;
    long total_leaves = 0;
    for (long d : depths) total_leaves += ipow(p, d);
    long total = 1;
    bool fits = true;
    for (long j = 0; j < total_leaves && fits; ++j) {
        if (s.size != 0 && total > budget / s.size) fits = false;
        total *= s.size;
    }
    auto run = [&](const std::vector<long>& flat) {
        std::vector<NestedTuple> args;
        long at = 0;
        for (long d : depths) {
            long cnt = ipow(p, d);
            args.push_back({d, p, std::vector<long>(flat.begin() + at, flat.begin() + at + cnt)});
            at += cnt;
        }
        ++checks;
        if (!fn(args)) failed = true;
    };
    if (fits) {
        std::vector<long> flat(total_leaves, 0);
        while (true) {
            run(flat);
            if (failed) return;
            long j = total_leaves - 1;
            while (j >= 0 && ++flat[j] == s.size) flat[j--] = 0;
            if (j < 0) break;
        }
    } else {
        exhaustive = false;
        std::uniform_int_distribution<long> pick(0, s.size - 1);
        std::vector<long> flat(total_leaves);
        for (long t = 0; t < samples && !failed; ++t) {
            for (long& v : flat) v = pick(rng);
            run(flat);
        }
    }
}

NestedTuple tuple_neg(const FiniteRing& s, const NestedTuple& t) {
    NestedTuple r = t;
    for (long& v : r.leaves) v = s.neg(v);
    return r;
}

NestedTuple one_tuple(const FiniteRing& s, long p) { return {0, p, {s.one}}; }

/// Encoding of a tuple under the basis identification; the fault reverses the
/// Kronecker factor order.
long encode_ident(const FiniteRing& s, const NestedTuple& t, bool fault) {
    long idx = 0;
    if (fault)
        for (auto it = t.leaves.rbegin(); it != t.leaves.rend(); ++it) idx = idx * s.size + *it;
    else
        for (long v : t.leaves) idx = idx * s.size + v;
    return idx;
}

/// Action of a symbolic structure-map matrix on a tuple of ring elements,
/// entrywise through the additive group of S.
std::vector<long> symbolic_action(const FiniteRing& s, const IntMatrix& m,
                                  const std::vector<long>& in) {
    std::vector<long> out(m.rows(), s.zero);
    for (const auto& t : m.triplets()) {
        mpz_class c = t.val;
        long x = in[t.col];
        if (c < 0) {
            x = s.neg(x);
            c = -c;
        }
        for (mpz_class j = 0; j < c; ++j) out[t.row] = s.add[out[t.row]][x];
    }
    return out;
}

long inv_mod(long a, long p) {
    long r = 1, b = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

using Vec = std::vector<long>;

/// Incremental row-echelon span tracker over F_p.
struct FpSpan {
    long p = 2;
    std::vector<Vec> rows;
    std::vector<long> pivots;

    // reduces v against the span; returns the residue (zero iff v was in it)
    Vec reduce(Vec v) const {
        for (size_t k = 0; k < rows.size(); ++k)
            if (v[pivots[k]] != 0) {
                long c = p - v[pivots[k]];
                for (size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + c * rows[k][j]) % p;
            }
        return v;
    }

    bool add(const Vec& v) {
        Vec r = reduce(v);
        auto nz = std::find_if(r.begin(), r.end(), [](long x) { return x != 0; });
        if (nz == r.end()) return false;
        long piv = static_cast<long>(nz - r.begin());
        long inv = inv_mod(r[piv], p);
        for (long& x : r) x = x * inv % p;
        rows.push_back(std::move(r));
        pivots.push_back(piv);
        return true;
    }
};

/// Kernel basis of a matrix over F_p by column reduction; basis vectors are
/// ordered by their lowest free column, deterministically.
std::vector<Vec> fp_kernel_basis(const IntMatrix& m, long p) {
    long rows = m.rows(), cols = m.cols();
    std::vector<Vec> a(rows, Vec(cols, 0));
    for (const auto& t : m.triplets()) {
        long v = static_cast<long>(mpz_class(t.val % p).get_si());
        a[t.row][t.col] = (v + p) % p;
    }
    std::vector<long> pivot_of_col(cols, -1);
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long pr = -1;
        for (long k = r; k < rows; ++k)
            if (a[k][c] != 0) {
                pr = k;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        long inv = inv_mod(a[r][c], p);
        for (long j = c; j < cols; ++j) a[r][j] = a[r][j] * inv % p;
        for (long k = 0; k < rows; ++k)
            if (k != r && a[k][c] != 0) {
                long f = p - a[k][c];
                for (long j = c; j < cols; ++j) a[k][j] = (a[k][j] + f * a[r][j]) % p;
            }
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<Vec> basis;
    for (long c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        Vec v(cols, 0);
        v[c] = 1;
        for (long j = 0; j < c; ++j)
            if (pivot_of_col[j] >= 0) v[j] = (p - a[pivot_of_col[j]][c]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve sum_k c_k col_k = rhs over F_p; empty optional when inconsistent.
std::optional<Vec> fp_solve(const std::vector<Vec>& columns, const Vec& rhs, long p) {
    long rows = static_cast<long>(rhs.size()), cols = static_cast<long>(columns.size());
    std::vector<Vec> a(rows, Vec(cols + 1, 0));
    for (long c = 0; c < cols; ++c)
        for (long r = 0; r < rows; ++r) a[r][c] = columns[c][r] % p;
    for (long r = 0; r < rows; ++r) a[r][cols] = rhs[r] % p;
    std::vector<long> pivot_of_col(cols, -1);
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long pr = -1;
        for (long k = r; k < rows; ++k)
            if (a[k][c] != 0) {
                pr = k;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        long inv = inv_mod(a[r][c], p);
        for (long j = c; j <= cols; ++j) a[r][j] = a[r][j] * inv % p;
        for (long k = 0; k < rows; ++k)
            if (k != r && a[k][c] != 0) {
                long f = p - a[k][c];
                for (long j = c; j <= cols; ++j) a[k][j] = (a[k][j] + f * a[r][j]) % p;
            }
        pivot_of_col[c] = r;
        ++r;
    }
    for (long k = r; k < rows; ++k)
        if (a[k][cols] != 0) return std::nullopt;
    Vec sol(cols, 0);
    for (long c = 0; c < cols; ++c)
        if (pivot_of_col[c] >= 0) sol[c] = a[pivot_of_col[c]][cols];
    return sol;
}

/// Homology data of a field complex at one degree: a boundary basis and cycle
/// representatives extending it, both picked by lowest-index elimination.
struct FieldHomology {
    std::vector<Vec> reps;
    std::vector<Vec> boundaries;
};

FieldHomology field_homology(const ChainComplex& c, long i) {
    long p = c.ring.mod;
    FieldHomology h;
    FpSpan span{p, {}, {}};
    IntMatrix din = c.diff_or_zero(i + 1);
    for (long col = 0; col < din.cols(); ++col) {
        Vec v(din.rows(), 0);
        for (const auto& t : din.triplets())
            if (t.col == col) v[t.row] = static_cast<long>(mpz_class((t.val % p + p) % p).get_si());
        if (span.add(v)) h.boundaries.push_back(std::move(v));
    }
    for (auto& z : fp_kernel_basis(c.diff_or_zero(i), p))
        if (span.add(z)) h.reps.push_back(std::move(z));
    return h;
}

} // namespace

NestedTuple cup_eval(const FiniteRing& s, long n, long m, long p, const NestedTuple& y,
                     const NestedTuple& x) {
    check_operand(s, n, p, y);
    check_operand(s, m, p, x);
    if (n == 0 && m == 0) return {0, p, {s.mul[y.leaves[0]][x.leaves[0]]}};
    NestedTuple r{n + m, p, {}};
    if (n == 0) {
        long blk = ipow(p, m - 1);
        for (long j = 0; j < p; ++j) {
            NestedTuple xj{m - 1, p,
                           std::vector<long>(x.leaves.begin() + j * blk,
                                             x.leaves.begin() + (j + 1) * blk)};
            auto c = cup_eval(s, 0, m - 1, p, y, xj);
            r.leaves.insert(r.leaves.end(), c.leaves.begin(), c.leaves.end());
        }
        return r;
    }
    long blk = ipow(p, n - 1);
    for (long j = 0; j < p; ++j) {
        NestedTuple yj{n - 1, p,
                       std::vector<long>(y.leaves.begin() + j * blk,
                                         y.leaves.begin() + (j + 1) * blk)};
        auto c = cup_eval(s, n - 1, m, p, yj, x);
        r.leaves.insert(r.leaves.end(), c.leaves.begin(), c.leaves.end());
    }
    return r;
}

NestedTuple cup_closed_form(const FiniteRing& s, long n, long m, long p, const NestedTuple& y,
                            const NestedTuple& x) {
    check_operand(s, n, p, y);
    check_operand(s, m, p, x);
    NestedTuple r{n + m, p, std::vector<long>(y.leaves.size() * x.leaves.size())};
    for (size_t a = 0; a < y.leaves.size(); ++a)
        for (size_t b = 0; b < x.leaves.size(); ++b)
            r.leaves[a * x.leaves.size() + b] = s.mul[y.leaves[a]][x.leaves[b]];
    return r;
}

bool GradedRingReport::ok() const {
    return std::all_of(items.begin(), items.end(), [](const Item& it) { return it.pass; });
}

bool CheckReport::ok() const {
    return std::all_of(items.begin(), items.end(), [](const Item& it) { return it.pass; });
}

GradedRingReport check_graded_ring_axioms(const FiniteRing& s, long n_max, long p_max, long budget,
                                          long samples, unsigned long seed) {
    GradedRingReport rep;
    std::mt19937_64 rng(seed);

    // runs one sweep family and appends its item; `fn` gets the item to set a
    // witness on failure
    auto family = [&](const std::string& axiom, long n, long m, auto&& levels) {
        GradedRingReport::Item item{axiom, n, m, p_max};
        bool failed = false;
        levels(item, failed);
        item.pass = !failed;
        rep.items.push_back(std::move(item));
    };

    for (long n = 0; n <= n_max; ++n)
        for (long m = 0; n + m <= n_max; ++m) {
            family("simplicial map compatibility (faces)", n, m, [&](auto& item, bool& failed) {
                for (long p = 1; p <= p_max && !failed; ++p)
                    for (long i = 0; i <= p && !failed; ++i)
                        sweep(s, {n, m}, p, budget, samples, rng, item.exhaustive, item.checks,
                              failed, [&](const std::vector<NestedTuple>& a) {
                                  auto lhs = face_eval(s, n + m, p, i, cup_eval(s, n, m, p, a[0], a[1]));
                                  auto rhs = cup_eval(s, n, m, p - 1, face_eval(s, n, p, i, a[0]),
                                                      face_eval(s, m, p, i, a[1]));
                                  if (lhs == rhs) return true;
                                  std::ostringstream w;
                                  w << "d_" << i << " at level " << p << ", y=" << tuple_str(a[0])
                                    << " x=" << tuple_str(a[1]);
                                  item.witness = w.str();
                                  return false;
                              });
            });
            family("simplicial map compatibility (degeneracies)", n, m, [&](auto& item, bool& failed) {
                for (long p = 0; p < p_max && !failed; ++p)
                    for (long i = 0; i <= p && !failed; ++i)
                        sweep(s, {n, m}, p, budget, samples, rng, item.exhaustive, item.checks,
                              failed, [&](const std::vector<NestedTuple>& a) {
                                  auto lhs =
                                      degen_eval(s, n + m, p, i, cup_eval(s, n, m, p, a[0], a[1]));
                                  auto rhs = cup_eval(s, n, m, p + 1, degen_eval(s, n, p, i, a[0]),
                                                      degen_eval(s, m, p, i, a[1]));
                                  if (lhs == rhs) return true;
                                  std::ostringstream w;
                                  w << "s_" << i << " at level " << p << ", y=" << tuple_str(a[0])
                                    << " x=" << tuple_str(a[1]);
                                  item.witness = w.str();
                                  return false;
                              });
            });
            family("distributivity", n, m, [&](auto& item, bool& failed) {
                for (long p = 1; p <= p_max && !failed; ++p)
                    sweep(s, {n, m, m}, p, budget, samples, rng, item.exhaustive, item.checks,
                          failed, [&](const std::vector<NestedTuple>& a) {
                              auto left = cup_eval(s, n, m, p, a[0], tuple_add(s, a[1], a[2]));
                              auto right = tuple_add(s, cup_eval(s, n, m, p, a[0], a[1]),
                                                     cup_eval(s, n, m, p, a[0], a[2]));
                              if (left == right) {
                                  auto l2 = cup_eval(s, m, n, p, tuple_add(s, a[1], a[2]), a[0]);
                                  auto r2 = tuple_add(s, cup_eval(s, m, n, p, a[1], a[0]),
                                                      cup_eval(s, m, n, p, a[2], a[0]));
                                  if (l2 == r2) return true;
                              }
                              std::ostringstream w;
                              w << "level " << p << ", y=" << tuple_str(a[0])
                                << " x=" << tuple_str(a[1]) << " x'=" << tuple_str(a[2]);
                              item.witness = w.str();
                              return false;
                          });
            });
        }

    for (long n1 = 0; n1 <= n_max; ++n1)
        for (long n2 = 0; n1 + n2 <= n_max; ++n2)
            for (long n3 = 0; n1 + n2 + n3 <= n_max; ++n3) {
                std::ostringstream name;
                name << "associativity (" << n1 << "," << n2 << "," << n3 << ")";
                family(name.str(), n1, n2, [&](auto& item, bool& failed) {
                    for (long p = 1; p <= p_max && !failed; ++p)
                        sweep(s, {n1, n2, n3}, p, budget, samples, rng, item.exhaustive,
                              item.checks, failed, [&](const std::vector<NestedTuple>& a) {
                                  auto lhs = cup_eval(s, n1 + n2, n3, p,
                                                      cup_eval(s, n1, n2, p, a[0], a[1]), a[2]);
                                  auto rhs = cup_eval(s, n1, n2 + n3, p, a[0],
                                                      cup_eval(s, n2, n3, p, a[1], a[2]));
                                  if (lhs == rhs) return true;
                                  std::ostringstream w;
                                  w << "level " << p << ", " << tuple_str(a[0]) << " "
                                    << tuple_str(a[1]) << " " << tuple_str(a[2]);
                                  item.witness = w.str();
                                  return false;
                              });
                });
            }

    for (long n = 0; n <= n_max; ++n)
        family("two-sided unit", n, 0, [&](auto& item, bool& failed) {
            for (long p = 1; p <= p_max && !failed; ++p)
                sweep(s, {n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                      [&](const std::vector<NestedTuple>& a) {
                          auto u = one_tuple(s, p);
                          if (cup_eval(s, 0, n, p, u, a[0]) == a[0] &&
                              cup_eval(s, n, 0, p, a[0], u) == a[0])
                              return true;
                          std::ostringstream w;
                          w << "level " << p << ", x=" << tuple_str(a[0]);
                          item.witness = w.str();
                          return false;
                      });
        });

    return rep;
}

CheckReport naturality_check(const FiniteRing& s, const Coeff& k, long n_max, long level_max,
                             bool transpose_kron_fault, long budget, long samples,
                             unsigned long seed) {
    CheckReport rep;
    std::mt19937_64 rng(seed);
    bool fault = transpose_kron_fault;

    auto item_for = [&](const std::string& name, auto&& body) {
        CheckReport::Item item{name};
        bool failed = false;
        body(item, failed);
        item.pass = !failed;
        rep.items.push_back(std::move(item));
    };

    for (long n = 0; n <= n_max; ++n) {
        auto sym = iterated_bar(additive_group(s), n, level_max);

        std::ostringstream fname;
        fname << "faces and degeneracies, B^" << n;
        item_for(fname.str(), [&](auto& item, bool& failed) {
            for (long p = 1; p <= level_max && !failed; ++p)
                for (long i = 0; i <= p && !failed; ++i)
                    sweep(s, {n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                          [&](const std::vector<NestedTuple>& a) {
                              // set side through the identification
                              long lhs = encode_ident(s, face_eval(s, n, p, i, a[0]), fault);
                              // tensor side: symbolic matrix, digitwise addition
                              long idx = encode_ident(s, a[0], fault);
                              auto digits = decode_tuple(s, n, p, idx).leaves;
                              auto out = symbolic_action(s, sym.face[p][i], digits);
                              long rhs = 0;
                              for (long v : out) rhs = rhs * s.size + v;
                              if (lhs == rhs) return true;
                              std::ostringstream w;
                              w << "d_" << i << " at level " << p << ", x=" << tuple_str(a[0]);
                              item.witness = w.str();
                              return false;
                          });
            for (long p = 0; p < level_max && !failed; ++p)
                for (long i = 0; i <= p && !failed; ++i)
                    sweep(s, {n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                          [&](const std::vector<NestedTuple>& a) {
                              long lhs = encode_ident(s, degen_eval(s, n, p, i, a[0]), fault);
                              long idx = encode_ident(s, a[0], fault);
                              auto digits = decode_tuple(s, n, p, idx).leaves;
                              auto out = symbolic_action(s, sym.degen[p][i], digits);
                              long rhs = 0;
                              for (long v : out) rhs = rhs * s.size + v;
                              if (lhs == rhs) return true;
                              std::ostringstream w;
                              w << "s_" << i << " at level " << p << ", x=" << tuple_str(a[0]);
                              item.witness = w.str();
                              return false;
                          });
        });

        std::ostringstream mname;
        mname << "multiplications, B^" << n;
        item_for(mname.str(), [&](auto& item, bool& failed) {
            for (long p = 0; p <= level_max && !failed; ++p)
                sweep(s, {n, n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                      [&](const std::vector<NestedTuple>& a) {
                          long lhs = encode_ident(s, tuple_add(s, a[0], a[1]), fault);
                          auto da = decode_tuple(s, n, p, encode_ident(s, a[0], fault)).leaves;
                          auto db = decode_tuple(s, n, p, encode_ident(s, a[1], fault)).leaves;
                          long rhs = 0;
                          for (size_t c = 0; c < da.size(); ++c)
                              rhs = rhs * s.size + s.add[da[c]][db[c]];
                          if (lhs == rhs) return true;
                          std::ostringstream w;
                          w << "level " << p << ", a=" << tuple_str(a[0]) << " b=" << tuple_str(a[1]);
                          item.witness = w.str();
                          return false;
                      });
        });

        std::ostringstream cname;
        cname << "comultiplications, B^" << n;
        item_for(cname.str(), [&](auto& item, bool& failed) {
            for (long p = 0; p <= level_max && !failed; ++p)
                sweep(s, {n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                      [&](const std::vector<NestedTuple>& a) {
                          // set side: x |-> (x, x)
                          long lx = encode_ident(s, a[0], fault);
                          // tensor side: digitwise grouplike comultiplication,
                          // then the middle-four interchange back to a pair
                          auto digits = decode_tuple(s, n, p, lx).leaves;
                          long left = 0, right = 0;
                          for (long v : digits) {
                              left = left * s.size + v;
                              right = right * s.size + v;
                          }
                          if (left == lx && right == lx) return true;
                          std::ostringstream w;
                          w << "level " << p << ", x=" << tuple_str(a[0]);
                          item.witness = w.str();
                          return false;
                      });
        });
    }

    for (long n1 = 0; n1 <= n_max; ++n1)
        for (long n2 = 0; n1 + n2 <= n_max; ++n2) {
            std::ostringstream name;
            name << "linearized cup, B^" << n1 << " x B^" << n2;
            item_for(name.str(), [&](auto& item, bool& failed) {
                for (long p = 1; p <= level_max && !failed; ++p)
                    sweep(s, {n1, n2}, p, budget, samples, rng, item.exhaustive, item.checks,
                          failed, [&](const std::vector<NestedTuple>& a) {
                              long lhs = encode_ident(s, cup_eval(s, n1, n2, p, a[0], a[1]), fault);
                              auto dy = decode_tuple(s, n1, p, encode_ident(s, a[0], fault)).leaves;
                              auto dx = decode_tuple(s, n2, p, encode_ident(s, a[1], fault)).leaves;
                              long rhs = 0;
                              for (size_t i = 0; i < dy.size(); ++i)
                                  for (size_t j = 0; j < dx.size(); ++j)
                                      rhs = rhs * s.size + s.mul[dy[i]][dx[j]];
                              if (lhs == rhs) return true;
                              std::ostringstream w;
                              w << "level " << p << ", y=" << tuple_str(a[0])
                                << " x=" << tuple_str(a[1]);
                              item.witness = w.str();
                              return false;
                          });
            });
        }

    for (long n = 0; n <= n_max; ++n) {
        std::ostringstream name;
        name << "matrix-level structure maps over " << k.name() << ", B^" << n;
        item_for(name.str(), [&](auto& item, bool& failed) {
            long top = 1;
            bool fits = true;
            for (long q = 0; q < ipow(level_max, n) && fits; ++q) {
                if (top > budget / std::max(s.size, 2L)) fits = false;
                else top *= s.size;
            }
            if (!fits) {
                item.exhaustive = false;
                return;
            }
            RingSpec spec{s.label, additive_group(s), s};
            auto lin = linearize(iterated_bar_set(spec, n, level_max, budget), k);
            auto sym = iterated_bar(spec.additive, n, level_max);
            auto tensor_side = [&](const IntMatrix& pattern, long src_level, long dst_level) {
                long src = lin.dim[src_level], dst = lin.dim[dst_level];
                std::vector<IntMatrix::Triplet> ts;
                for (long idx = 0; idx < src; ++idx) {
                    auto digits = decode_tuple(s, n, src_level, idx).leaves;
                    auto out = symbolic_action(s, pattern, digits);
                    long row = 0;
                    for (long v : out) row = row * s.size + v;
                    ts.push_back({row, idx, 1});
                }
                return IntMatrix::from_triplets(dst, src, std::move(ts));
            };
            for (long p = 1; p <= level_max && !failed; ++p)
                for (long i = 0; i <= p && !failed; ++i) {
                    ++item.checks;
                    if (!eq_mod(lin.face[p][i], tensor_side(sym.face[p][i], p, p - 1), k)) {
                        std::ostringstream w;
                        w << "d_" << i << " at level " << p;
                        item.witness = w.str();
                        failed = true;
                    }
                }
            for (long p = 0; p < level_max && !failed; ++p)
                for (long i = 0; i <= p && !failed; ++i) {
                    ++item.checks;
                    if (!eq_mod(lin.degen[p][i], tensor_side(sym.degen[p][i], p, p + 1), k)) {
                        std::ostringstream w;
                        w << "s_" << i << " at level " << p;
                        item.witness = w.str();
                        failed = true;
                    }
                }
        });
    }

    return rep;
}

CheckReport hopf_checks(const FiniteRing& s, const Coeff& k, long n, long level_max, long budget,
                        long samples, unsigned long seed) {
    CheckReport rep;
    std::mt19937_64 rng(seed);

    auto item_for = [&](const std::string& name, auto&& body) {
        CheckReport::Item item{name};
        bool failed = false;
        body(item, failed);
        item.pass = !failed;
        rep.items.push_back(std::move(item));
    };

    auto wit1 = [&](CheckReport::Item& item, long p, const NestedTuple& a) {
        std::ostringstream w;
        w << "level " << p << ", a=" << tuple_str(a);
        item.witness = w.str();
        return false;
    };

    item_for("comultiplication is an algebra map", [&](auto& item, bool& failed) {
        for (long p = 0; p <= level_max && !failed; ++p) {
            long dim = 1;
            bool small = true;
            for (long q = 0; q < ipow(p, n) && small; ++q) {
                if (dim > 46340) small = false;
                else dim *= s.size;
            }
            if (!small) {
                // index route needs dim^4 to fit a machine word
                item.exhaustive = false;
                continue;
            }
            long D = dim;
            sweep(s, {n, n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                  [&](const std::vector<NestedTuple>& a) {
                      long A = encode_tuple(s, a[0]), B = encode_tuple(s, a[1]);
                      long ab = encode_tuple(s, tuple_add(s, a[0], a[1]));
                      long lhs = ab * D + ab;
                      // Delta (x) Delta, middle-four interchange, then m (x) m
                      long t4 = ((A * D + A) * D + B) * D + B;
                      long x4 = t4 % D, x3 = t4 / D % D, x2 = t4 / (D * D) % D,
                           x1 = t4 / (D * D * D);
                      long left = encode_tuple(
                          s, tuple_add(s, decode_tuple(s, n, p, x1), decode_tuple(s, n, p, x3)));
                      long right = encode_tuple(
                          s, tuple_add(s, decode_tuple(s, n, p, x2), decode_tuple(s, n, p, x4)));
                      return lhs == left * D + right || wit1(item, p, a[0]);
                  });
        }
    });

    item_for("antipode identity", [&](auto& item, bool& failed) {
        for (long p = 0; p <= level_max && !failed; ++p)
            sweep(s, {n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                  [&](const std::vector<NestedTuple>& a) {
                      auto z = zero_tuple(s, n, p);
                      return (tuple_add(s, tuple_neg(s, a[0]), a[0]) == z &&
                              tuple_add(s, a[0], tuple_neg(s, a[0])) == z) ||
                             wit1(item, p, a[0]);
                  });
    });

    item_for("antipode is an involution", [&](auto& item, bool& failed) {
        for (long p = 0; p <= level_max && !failed; ++p)
            sweep(s, {n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                  [&](const std::vector<NestedTuple>& a) {
                      return tuple_neg(s, tuple_neg(s, a[0])) == a[0] || wit1(item, p, a[0]);
                  });
    });

    item_for("antipode is an algebra map", [&](auto& item, bool& failed) {
        for (long p = 0; p <= level_max && !failed; ++p)
            sweep(s, {n, n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                  [&](const std::vector<NestedTuple>& a) {
                      return tuple_neg(s, tuple_add(s, a[0], a[1])) ==
                                 tuple_add(s, tuple_neg(s, a[0]), tuple_neg(s, a[1])) ||
                             wit1(item, p, a[0]);
                  });
    });

    item_for("commutativity and cocommutativity", [&](auto& item, bool& failed) {
        for (long p = 0; p <= level_max && !failed; ++p)
            sweep(s, {n, n}, p, budget, samples, rng, item.exhaustive, item.checks, failed,
                  [&](const std::vector<NestedTuple>& a) {
                      return tuple_add(s, a[0], a[1]) == tuple_add(s, a[1], a[0]) ||
                             wit1(item, p, a[0]);
                  });
    });

    // matrix-level cross-check over k at levels whose module is small enough
    item_for("matrix-level counit and antipode over " + k.name(), [&](auto& item, bool& failed) {
        for (long p = 0; p <= level_max && !failed; ++p) {
            long dim = 1;
            bool fits = true;
            for (long j = 0; j < ipow(p, n) && fits; ++j) {
                if (dim > budget / (s.size * s.size)) fits = false;
                dim *= s.size;
            }
            if (!fits) {
                item.exhaustive = false;
                continue;
            }
            std::vector<IntMatrix::Triplet> mul_t, chi_t, delta_t;
            for (long a = 0; a < dim; ++a) {
                auto ta = decode_tuple(s, n, p, a);
                chi_t.push_back({encode_tuple(s, tuple_neg(s, ta)), a, 1});
                delta_t.push_back({a * dim + a, a, 1});
                for (long b = 0; b < dim; ++b)
                    mul_t.push_back(
                        {encode_tuple(s, tuple_add(s, ta, decode_tuple(s, n, p, b))), a * dim + b, 1});
            }
            auto mul = IntMatrix::from_triplets(dim, dim * dim, std::move(mul_t));
            auto chi = IntMatrix::from_triplets(dim, dim, std::move(chi_t));
            auto delta = IntMatrix::from_triplets(dim * dim, dim, std::move(delta_t));
            std::vector<IntMatrix::Triplet> eps_t, eta_t;
            for (long a = 0; a < dim; ++a) eps_t.push_back({0, a, 1});
            eta_t.push_back({encode_tuple(s, zero_tuple(s, n, p)), 0, 1});
            auto eps = IntMatrix::from_triplets(1, dim, std::move(eps_t));
            auto eta = IntMatrix::from_triplets(dim, 1, std::move(eta_t));
            ++item.checks;
            bool counit = eq_mod(eps.kron(IntMatrix::identity(dim)) * delta,
                                 IntMatrix::identity(dim), k) &&
                          eq_mod(IntMatrix::identity(dim).kron(eps) * delta,
                                 IntMatrix::identity(dim), k);
            bool antipode = eq_mod(mul * (chi.kron(IntMatrix::identity(dim)) * delta), eta * eps, k) &&
                            eq_mod(mul * (IntMatrix::identity(dim).kron(chi) * delta), eta * eps, k);
            if (!counit || !antipode) {
                std::ostringstream w;
                w << "level " << p;
                item.witness = w.str();
                failed = true;
            }
        }
    });

    return rep;
}

HomologyPairing homology_circle_product(const FiniteRing& s, const Coeff& k, long n, long m, long i,
                                        long j, long truncation, long perturbations,
                                        unsigned long seed) {
    if (!k.is_prime_field()) throw InvalidAlgebra("homology pairing needs a prime-field base ring");
    long t = i + j;
    if (truncation < t + 1) throw TruncationTooLow("homology pairing needs truncation >= i+j+1");
    long p = k.mod;

    RingSpec spec;
    spec.text = s.label;
    spec.additive = additive_group(s);
    spec.ring = s;
    auto kx = linearize(iterated_bar_set(spec, n, truncation), k);
    auto ky = linearize(iterated_bar_set(spec, m, truncation), k);
    auto kz = linearize(iterated_bar_set(spec, n + m, truncation), k);

    auto nx = normalized_chains(kx, t + 1);
    auto ny = normalized_chains(ky, t + 1);
    auto nz = normalized_chains(kz, t + 1);
    auto nxy = normalized_chains(tensor_product(kx, ky), t);
    auto ez = ez_shuffle(kx, ky, t);

    auto hx = field_homology(nx.complex, i);
    auto hy = field_homology(ny.complex, j);
    auto hz = field_homology(nz.complex, t);

    long off = tensor_summand_offset(nx.complex, ny.complex, i, j);
    long dny = ny.complex.rank(j);
    long full_z = kz.dim[t];

    // position of each full level-t coordinate of k[B^{n+m}] in the normalized
    // basis, -1 on the degenerate complement
    std::vector<long> pos(full_z, -1);
    for (size_t r = 0; r < nz.basis[t].size(); ++r) pos[nz.basis[t][r]] = static_cast<long>(r);

    auto hz_columns = hz.reps;
    for (const auto& b : hz.boundaries) hz_columns.push_back(b);

    auto pair_column = [&](const Vec& u, const Vec& v) {
        std::vector<mpz_class> w(ez.source.rank(t), 0);
        for (size_t r = 0; r < u.size(); ++r)
            for (size_t c = 0; c < v.size(); ++c)
                if (u[r] && v[c]) w[off + static_cast<long>(r) * dny + static_cast<long>(c)] =
                    u[r] * v[c] % p;
        auto z1 = ez.maps[t].apply(w);
        std::vector<long> full(full_z, 0);
        for (size_t q = 0; q < z1.size(); ++q) {
            long cq = static_cast<long>(mpz_class((z1[q] % p + p) % p).get_si());
            if (cq == 0) continue;
            long e = nxy.basis[t][q];
            long a = e / ky.dim[t], b = e % ky.dim[t];
            auto image = cup_closed_form(s, n, m, t, decode_tuple(s, n, t, a),
                                         decode_tuple(s, m, t, b));
            long c = encode_tuple(s, image);
            full[c] = (full[c] + cq) % p;
        }
        Vec z(nz.complex.rank(t), 0);
        for (long c = 0; c < full_z; ++c)
            if (full[c] && pos[c] >= 0) z[pos[c]] = full[c];
        if (t >= 1) {
            auto dz = nz.complex.diff(t).apply(
                [&] {
                    std::vector<mpz_class> zz(z.size());
                    for (size_t q = 0; q < z.size(); ++q) zz[q] = z[q];
                    return zz;
                }());
            for (const auto& e : dz)
                if (e % p != 0) throw InvalidAlgebra("circle product image is not a cycle");
        }
        auto sol = fp_solve(hz_columns, z, p);
        if (!sol) throw InvalidAlgebra("cycle escapes the computed homology basis");
        return Vec(sol->begin(), sol->begin() + static_cast<long>(hz.reps.size()));
    };

    auto assemble = [&](const std::vector<Vec>& reps_x, const std::vector<Vec>& reps_y) {
        std::vector<IntMatrix::Triplet> ts;
        for (size_t u = 0; u < reps_x.size(); ++u)
            for (size_t v = 0; v < reps_y.size(); ++v) {
                auto col = pair_column(reps_x[u], reps_y[v]);
                for (size_t r = 0; r < col.size(); ++r)
                    if (col[r])
                        ts.push_back({static_cast<long>(r),
                                      static_cast<long>(u * reps_y.size() + v), col[r]});
            }
        return IntMatrix::from_triplets(static_cast<long>(hz.reps.size()),
                                        static_cast<long>(reps_x.size() * reps_y.size()),
                                        std::move(ts));
    };

    HomologyPairing out;
    out.n = n;
    out.m = m;
    out.i = i;
    out.j = j;
    out.dim_left = static_cast<long>(hx.reps.size());
    out.dim_right = static_cast<long>(hy.reps.size());
    out.dim_target = static_cast<long>(hz.reps.size());
    out.matrix = assemble(hx.reps, hy.reps);

    std::mt19937_64 rng(seed);
    for (long trial = 0; trial < perturbations; ++trial) {
        bool left = trial % 2 == 0;
        auto& h = left ? hx : hy;
        if (h.reps.empty() || h.boundaries.empty()) continue;
        auto reps = h.reps;
        std::uniform_int_distribution<long> which(0, static_cast<long>(reps.size()) - 1);
        std::uniform_int_distribution<long> coeff(0, p - 1);
        long w = which(rng);
        for (const auto& b : h.boundaries) {
            long c = coeff(rng);
            for (size_t q = 0; q < b.size(); ++q) reps[w][q] = (reps[w][q] + c * b[q]) % p;
        }
        auto perturbed = left ? assemble(reps, hy.reps) : assemble(hx.reps, reps);
        if (!(perturbed == out.matrix))
            throw InvalidAlgebra("circle product depends on the choice of representatives");
    }
    return out;
}

} // namespace barcalc
