#include "barcalc/intmatrix.hpp"
#include "barcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace barcalc {

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    m.ts_.reserve(n);
    for (long i = 0; i < n; ++i) m.ts_.push_back({i, i, 1});
    return m;
}

IntMatrix IntMatrix::from_triplets(long rows, long cols, std::vector<Triplet> ts) {
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    IntMatrix m(rows, cols);
    for (auto& t : ts) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw IndexOutOfRange("triplet out of range");
        if (!m.ts_.empty() && m.ts_.back().row == t.row && m.ts_.back().col == t.col)
            m.ts_.back().val += t.val;
        else
            m.ts_.push_back(std::move(t));
    }
    std::erase_if(m.ts_, [](const Triplet& t) { return t.val == 0; });
    return m;
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<mpz_class>>& d) {
    long rows = static_cast<long>(d.size());
    long cols = rows ? static_cast<long>(d[0].size()) : 0;
    IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            if (d[i][j] != 0) m.ts_.push_back({i, j, d[i][j]});
    return m;
}

mpz_class IntMatrix::at(long r, long c) const {
    auto it = std::lower_bound(ts_.begin(), ts_.end(), std::pair{r, c},
                               [](const Triplet& t, const std::pair<long, long>& k) {
                                   return std::tie(t.row, t.col) < std::tie(k.first, k.second);
                               });
    if (it != ts_.end() && it->row == r && it->col == c) return it->val;
    return 0;
}

std::vector<std::vector<mpz_class>> IntMatrix::to_dense() const {
    std::vector<std::vector<mpz_class>> d(rows_, std::vector<mpz_class>(cols_, mpz_class(0)));
    for (const auto& t : ts_) d[t.row][t.col] = t.val;
    return d;
}

IntMatrix IntMatrix::transpose() const {
    std::vector<Triplet> ts;
    ts.reserve(ts_.size());
    for (const auto& t : ts_) ts.push_back({t.col, t.row, t.val});
    return from_triplets(cols_, rows_, std::move(ts));
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw ShapeMismatch("matrix product shape mismatch");
    // row lists of other
    std::vector<std::vector<const Triplet*>> brows(other.rows_);
    for (const auto& t : other.ts_) brows[t.row].push_back(&t);
    std::map<std::pair<long, long>, mpz_class> acc;
    for (const auto& a : ts_)
        for (const Triplet* b : brows[a.col]) acc[{a.row, b->col}] += a.val * b->val;
    std::vector<Triplet> ts;
    for (auto& [rc, v] : acc)
        if (v != 0) ts.push_back({rc.first, rc.second, std::move(v)});
    return from_triplets(rows_, other.cols_, std::move(ts));
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ShapeMismatch("matrix sum shape mismatch");
    std::vector<Triplet> ts(ts_);
    ts.insert(ts.end(), other.ts_.begin(), other.ts_.end());
    return from_triplets(rows_, cols_, std::move(ts));
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const { return *this + other.scaled(-1); }

IntMatrix IntMatrix::scaled(const mpz_class& c) const {
    if (c == 0) return zero(rows_, cols_);
    IntMatrix m(rows_, cols_);
    m.ts_ = ts_;
    for (auto& t : m.ts_) t.val *= c;
    return m;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_ || ts_.size() != other.ts_.size()) return false;
    for (size_t i = 0; i < ts_.size(); ++i)
        if (ts_[i].row != other.ts_[i].row || ts_[i].col != other.ts_[i].col ||
            ts_[i].val != other.ts_[i].val)
            return false;
    return true;
}

std::vector<mpz_class> IntMatrix::apply(const std::vector<mpz_class>& v) const {
    if (static_cast<long>(v.size()) != cols_) throw ShapeMismatch("apply: vector length mismatch");
    std::vector<mpz_class> out(rows_, mpz_class(0));
    for (const auto& t : ts_) out[t.row] += t.val * v[t.col];
    return out;
}

IntMatrix IntMatrix::kron(const IntMatrix& other) const {
    std::vector<Triplet> ts;
    ts.reserve(ts_.size() * other.ts_.size());
    for (const auto& a : ts_)
        for (const auto& b : other.ts_)
            ts.push_back({a.row * other.rows_ + b.row, a.col * other.cols_ + b.col, a.val * b.val});
    return from_triplets(rows_ * other.rows_, cols_ * other.cols_, std::move(ts));
}

IntMatrix IntMatrix::hstack(const IntMatrix& other) const {
    if (rows_ != other.rows_) throw ShapeMismatch("hstack row mismatch");
    std::vector<Triplet> ts(ts_);
    for (const auto& t : other.ts_) ts.push_back({t.row, t.col + cols_, t.val});
    return from_triplets(rows_, cols_ + other.cols_, std::move(ts));
}

IntMatrix IntMatrix::vstack(const IntMatrix& other) const {
    if (cols_ != other.cols_) throw ShapeMismatch("vstack col mismatch");
    std::vector<Triplet> ts(ts_);
    for (const auto& t : other.ts_) ts.push_back({t.row + rows_, t.col, t.val});
    return from_triplets(rows_ + other.rows_, cols_, std::move(ts));
}

IntMatrix IntMatrix::select_rows(const std::vector<long>& which) const {
    std::vector<long> pos(rows_, -1);
    for (size_t i = 0; i < which.size(); ++i) pos[which[i]] = static_cast<long>(i);
    std::vector<Triplet> ts;
    for (const auto& t : ts_)
        if (pos[t.row] >= 0) ts.push_back({pos[t.row], t.col, t.val});
    return from_triplets(static_cast<long>(which.size()), cols_, std::move(ts));
}

IntMatrix IntMatrix::select_cols(const std::vector<long>& which) const {
    std::vector<long> pos(cols_, -1);
    for (size_t i = 0; i < which.size(); ++i) pos[which[i]] = static_cast<long>(i);
    std::vector<Triplet> ts;
    for (const auto& t : ts_)
        if (pos[t.col] >= 0) ts.push_back({t.row, pos[t.col], t.val});
    return from_triplets(rows_, static_cast<long>(which.size()), std::move(ts));
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    auto d = to_dense();
    for (long i = 0; i < rows_; ++i) {
        os << "[";
        for (long j = 0; j < cols_; ++j) os << (j ? " " : "") << d[i][j].get_str();
        os << "]\n";
    }
    return os.str();
}

FpMatrix FpMatrix::identity(long n, long p) {
    FpMatrix m{p, n, n, {}};
    for (long i = 0; i < n; ++i) m.ts.push_back({i, i, 1});
    return m;
}

FpMatrix FpMatrix::from_int_matrix(const IntMatrix& a, long p) {
    FpMatrix m{p, a.rows(), a.cols(), {}};
    for (const auto& t : a.triplets()) {
        mpz_class r = t.val % p;
        if (r < 0) r += p;
        long v = r.get_si();
        if (v != 0) m.ts.push_back({t.row, t.col, v});
    }
    return m;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace barcalc
