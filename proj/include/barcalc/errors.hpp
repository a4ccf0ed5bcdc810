#pragma once
#include <stdexcept>
#include <string>

namespace barcalc {

struct CompositionNotZero : std::runtime_error {
    explicit CompositionNotZero(const std::string& what) : std::runtime_error(what) {}
};
struct TruncationMismatch : std::runtime_error {
    explicit TruncationMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct TruncationTooLow : std::runtime_error {
    explicit TruncationTooLow(const std::string& what) : std::runtime_error(what) {}
};
struct InfiniteLevel : std::runtime_error {
    explicit InfiniteLevel(const std::string& what) : std::runtime_error(what) {}
};
struct ResourceBudgetExceeded : std::runtime_error {
    explicit ResourceBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct IndexOutOfRange : std::runtime_error {
    explicit IndexOutOfRange(const std::string& what) : std::runtime_error(what) {}
};
struct InvalidAlgebra : std::runtime_error {
    explicit InvalidAlgebra(const std::string& what) : std::runtime_error(what) {}
};
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace barcalc
