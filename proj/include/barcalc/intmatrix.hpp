#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace barcalc {

/// Sparse integer matrix with arbitrary-precision entries.
/// Triplets are kept sorted by (row, col), values nonzero, no duplicates.
class IntMatrix {
public:
    struct Triplet {
        long row = 0, col = 0;
        mpz_class val;
    };

    IntMatrix() = default;
    IntMatrix(long rows, long cols) : rows_(rows), cols_(cols) {}

    static IntMatrix identity(long n);
    static IntMatrix zero(long rows, long cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_triplets(long rows, long cols, std::vector<Triplet> ts);
    static IntMatrix from_dense(const std::vector<std::vector<mpz_class>>& d);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    const std::vector<Triplet>& triplets() const { return ts_; }
    long nnz() const { return static_cast<long>(ts_.size()); }
    bool is_zero() const { return ts_.empty(); }

    mpz_class at(long r, long c) const;
    std::vector<std::vector<mpz_class>> to_dense() const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& other) const;
    IntMatrix operator+(const IntMatrix& other) const;
    IntMatrix operator-(const IntMatrix& other) const;
    IntMatrix scaled(const mpz_class& c) const;
    bool operator==(const IntMatrix& other) const;

    std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const;

    IntMatrix kron(const IntMatrix& other) const;

    /// [this | other]
    IntMatrix hstack(const IntMatrix& other) const;
    /// [this ; other]
    IntMatrix vstack(const IntMatrix& other) const;

    IntMatrix select_rows(const std::vector<long>& which) const;
    IntMatrix select_cols(const std::vector<long>& which) const;

    std::string to_string() const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<Triplet> ts_;
};

/// Sparse matrix over the prime field F_p, entries in [1, p-1].
struct FpMatrix {
    struct Triplet {
        long row = 0, col = 0;
        long val = 0;
    };
    long p = 2;
    long rows = 0, cols = 0;
    std::vector<Triplet> ts;

    static FpMatrix identity(long n, long p);
    static FpMatrix from_int_matrix(const IntMatrix& a, long p);
};

bool is_prime(long n);

} // namespace barcalc
