#pragma once

// Exact real numbers of the form  sum_i r_i sqrt(s_i)  with rational r_i and
// distinct square-free integers s_i >= 1. The set is closed under +, - and *,
// which is all the Fock-state algebra needs for Bose factors sqrt(n+1).

#include <cstdint>
#include <map>
#include <string>

#include "stimpdc/combinatorics.hpp"

namespace stimpdc {

/// Raised when a value leaves the exactly representable set (e.g. 1/sqrt of an irrational).
class ExactArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SurdSum {
public:
    SurdSum() = default;
    SurdSum(int value) : SurdSum(Rational(value)) {}  // NOLINT: implicit by design of the number type
    SurdSum(const Rational& value);                    // NOLINT

    /// coeff * sqrt(radicand); the radicand must already be square-free.
    [[nodiscard]] static SurdSum term(const Rational& coeff, const BigInt& squarefree_radicand);

    /// sqrt(value) for a non-negative rational.
    [[nodiscard]] static SurdSum sqrt_of(const Rational& value);

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_rational() const;
    /// Throws ExactArithmeticError unless is_rational().
    [[nodiscard]] Rational rational_value() const;
    [[nodiscard]] double to_double() const;

    /// 1/sqrt(x) for a positive rational x; throws ExactArithmeticError otherwise.
    [[nodiscard]] SurdSum inverse_sqrt() const;

    /// Terms as "(a/b)·sqrt(c)" joined by " + "; zero prints as "(0/1)·sqrt(1)".
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] const std::map<BigInt, Rational>& terms() const { return terms_; }

    SurdSum& operator+=(const SurdSum& other);
    SurdSum& operator-=(const SurdSum& other);
    SurdSum& operator*=(const SurdSum& other);

    friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
    friend SurdSum operator-(SurdSum a, const SurdSum& b) { return a -= b; }
    friend SurdSum operator*(SurdSum a, const SurdSum& b) { return a *= b; }
    friend SurdSum operator-(SurdSum a) {
        for (auto& [radicand, coeff] : a.terms_) coeff = -coeff;
        return a;
    }
    friend bool operator==(const SurdSum& a, const SurdSum& b) { return a.terms_ == b.terms_; }

private:
    void add_term(const BigInt& radicand, const Rational& coeff);

    std::map<BigInt, Rational> terms_;  // square-free radicand -> non-zero coefficient
};

/// Accumulates a product of small positive integers as prime exponents so its
/// square root can be split into outside * sqrt(squarefree) without factoring
/// a large number.
class SquareRootAccumulator {
public:
    void multiply(std::int64_t k);
    /// Multiplies by n!/m! for 0 <= m <= n.
    void multiply_factorial_ratio(std::int64_t n, std::int64_t m);
    [[nodiscard]] SurdSum sqrt() const;
    [[nodiscard]] BigInt value() const;

private:
    std::map<std::int64_t, int> exponents_;
};

/// Splits n > 0 as outside^2 * squarefree.
struct SquareFreeSplit {
    BigInt outside;
    BigInt squarefree;
};
[[nodiscard]] SquareFreeSplit split_square_free(const BigInt& n);

}  // namespace stimpdc
