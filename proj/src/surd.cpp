#include "stimpdc/surd.hpp"

#include <boost/multiprecision/integer.hpp>
#include <cmath>

namespace stimpdc {

SquareFreeSplit split_square_free(const BigInt& n) {
    if (n <= 0) throw std::invalid_argument("split_square_free: need n > 0");
    BigInt rest = n;
    BigInt outside = 1;
    BigInt squarefree = 1;
    for (BigInt p = 2; p * p <= rest; ++p) {
        int exponent = 0;
        while (rest % p == 0) {
            rest /= p;
            ++exponent;
        }
        for (int i = 0; i < exponent / 2; ++i) outside *= p;
        if (exponent % 2 == 1) squarefree *= p;
    }
    squarefree *= rest;
    return {outside, squarefree};
}

SurdSum::SurdSum(const Rational& value) {
    if (value != 0) terms_.emplace(BigInt(1), value);
}

SurdSum SurdSum::term(const Rational& coeff, const BigInt& squarefree_radicand) {
    if (squarefree_radicand <= 0) throw std::invalid_argument("SurdSum::term: radicand must be positive");
    SurdSum out;
    out.add_term(squarefree_radicand, coeff);
    return out;
}

SurdSum SurdSum::sqrt_of(const Rational& value) {
    if (value < 0) throw ExactArithmeticError("SurdSum::sqrt_of: negative argument");
    SurdSum out;
    if (value == 0) return out;
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    const auto split = split_square_free(num * den);
    out.terms_.emplace(split.squarefree, Rational(split.outside, den));
    return out;
}

bool SurdSum::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational SurdSum::rational_value() const {
    if (!is_rational()) throw ExactArithmeticError("SurdSum: value " + to_string() + " is irrational");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

double SurdSum::to_double() const {
    double sum = 0.0;
    for (const auto& [radicand, coeff] : terms_)
        sum += static_cast<double>(coeff) * std::sqrt(static_cast<double>(radicand));
    return sum;
}

SurdSum SurdSum::inverse_sqrt() const {
    const Rational x = rational_value();
    if (x <= 0) throw ExactArithmeticError("SurdSum::inverse_sqrt: argument must be positive");
    return sqrt_of(1 / x);
}

std::string SurdSum::to_string() const {
    if (terms_.empty()) return "(0/1)·sqrt(1)";
    std::string out;
    for (const auto& [radicand, coeff] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + boost::multiprecision::numerator(coeff).str() + "/" +
               boost::multiprecision::denominator(coeff).str() + ")·sqrt(" + radicand.str() + ")";
    }
    return out;
}

void SurdSum::add_term(const BigInt& radicand, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(radicand, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

SurdSum& SurdSum::operator+=(const SurdSum& other) {
    for (const auto& [radicand, coeff] : other.terms_) add_term(radicand, coeff);
    return *this;
}

SurdSum& SurdSum::operator-=(const SurdSum& other) {
    for (const auto& [radicand, coeff] : other.terms_) add_term(radicand, -coeff);
    return *this;
}

SurdSum& SurdSum::operator*=(const SurdSum& other) {
    SurdSum product;
    for (const auto& [ra, ca] : terms_) {
        for (const auto& [rb, cb] : other.terms_) {
            // sqrt(a) sqrt(b) = g sqrt((a/g)(b/g)) with g = gcd(a, b); the
            // cofactors are coprime and square-free, so the result is too.
            const BigInt g = boost::multiprecision::gcd(ra, rb);
            product.add_term((ra / g) * (rb / g), ca * cb * Rational(g));
        }
    }
    terms_ = std::move(product.terms_);
    return *this;
}


void SquareRootAccumulator::multiply(std::int64_t k) {
    if (k <= 0) throw std::invalid_argument("SquareRootAccumulator: factors must be positive");
    for (std::int64_t p = 2; p * p <= k; ++p) {
        while (k % p == 0) {
            ++exponents_[p];
            k /= p;
        }
    }
    if (k > 1) ++exponents_[k];
}

void SquareRootAccumulator::multiply_factorial_ratio(std::int64_t n, std::int64_t m) {
    if (m < 0 || n < m) throw std::invalid_argument("SquareRootAccumulator: need 0 <= m <= n");
    for (std::int64_t k = m + 1; k <= n; ++k) multiply(k);
}

SurdSum SquareRootAccumulator::sqrt() const {
    BigInt outside = 1;
    BigInt squarefree = 1;
    for (const auto& [prime, exponent] : exponents_) {
        outside *= boost::multiprecision::pow(BigInt(prime), static_cast<unsigned>(exponent / 2));
        if (exponent % 2 == 1) squarefree *= prime;
    }
    return SurdSum::term(Rational(outside), squarefree);
}

BigInt SquareRootAccumulator::value() const {
    BigInt v = 1;
    for (const auto& [prime, exponent] : exponents_)
        v *= boost::multiprecision::pow(BigInt(prime), static_cast<unsigned>(exponent));
    return v;
}

}  // namespace stimpdc
