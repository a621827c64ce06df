#pragma once

#include "ntkit/bigint.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ntkit::dioph {

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

/// Sparse integer polynomial. Variable slots 0..n_params-1 are the parameters
/// x1..xN, the remaining slots are the witnesses y1..yM. Terms are sorted by
/// exponent vector, with no duplicates and no zero coefficients.
struct IntPolynomial {
    unsigned arity = 0;
    std::vector<std::pair<std::vector<unsigned>, BigInt>> terms;

    /// Exact evaluation; point.size() must equal arity.
    BigInt eval(std::span<const BigInt> point) const;
};

struct ParsedPolynomial {
    IntPolynomial poly;
    unsigned n_params = 0;
    unsigned m_witnesses = 0;
};

/// Text syntax: integer coefficients, variables x1..xN and y1..yM, operators
/// + - * ^ and parentheses, standard precedence (^ binds tightest, then *,
/// then + and -; unary minus allowed). Errors carry the byte offset.
ParsedPolynomial parse_polynomial(std::string_view text);

std::string to_string(const IntPolynomial& poly, unsigned n_params);

}  // namespace ntkit::dioph
