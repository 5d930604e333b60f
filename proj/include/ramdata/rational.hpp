#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace ramdata {

using Int = std::int64_t;

// Overflow-checked primitives; every overflow throws InvariantViolation.
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

Int gcd(Int a, Int b);
Int lcm(Int a, Int b);

/// Exact rational number p/q, always normalised (q > 0, gcd(p,q) = 1).
class Rational {
public:
    constexpr Rational() = default;
    Rational(Int value) : num_(value), den_(1) {} // NOLINT(google-explicit-constructor)
    Rational(Int num, Int den);

    Int num() const { return num_; }
    Int den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// Largest integer <= value.
    Int floor() const;

    std::string to_string() const;
    /// Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view text);

private:
    Int num_ = 0;
    Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace ramdata
