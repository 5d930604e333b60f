#include "ramdata/rational.hpp"

#include "ramdata/errors.hpp"

#include <charconv>
#include <cstdlib>

namespace ramdata {

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw InvariantViolation("integer overflow in addition");
    return r;
}

Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw InvariantViolation("integer overflow in subtraction");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw InvariantViolation("integer overflow in multiplication");
    return r;
}

Int gcd(Int a, Int b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int lcm(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd(a, b);
    Int r = checked_mul(a / g, b);
    return r < 0 ? -r : r;
}

Rational::Rational(Int num, Int den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    if (den < 0) {
        num = checked_sub(0, num);
        den = checked_sub(0, den);
    }
    Int g = gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::operator-() const { return Rational(checked_sub(0, num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
    Int g = gcd(den_, o.den_);
    Int lhs = checked_mul(num_, o.den_ / g);
    Int rhs = checked_mul(o.num_, den_ / g);
    *this = Rational(checked_add(lhs, rhs), checked_mul(den_ / g, o.den_));
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    // Cross-cancel first to keep magnitudes small.
    Int g1 = gcd(num_, o.den_);
    Int g2 = gcd(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    *this = Rational(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw InvalidInput("division by zero rational");
    return *this *= Rational(o.den_, o.num_);
}

__extension__ using Wide = __int128;

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    return lhs <=> rhs;
}

Int Rational::floor() const {
    Int q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

Int parse_int(std::string_view s) {
    Int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw InvalidInput("not an integer: '" + std::string(s) + "'");
    return v;
}

} // namespace

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

} // namespace ramdata
