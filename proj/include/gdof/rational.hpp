#pragma once

// Exact rational scalar used for every channel strength, GDoF value and
// power exponent. Backed by GMP's mpq_class; values are always kept in
// lowest terms with a positive denominator.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace gdof {

class Rational {
public:
    Rational() = default;
    Rational(long long value) : value_(static_cast<long>(value)) {}  // NOLINT(implicit)
    Rational(long long numerator, long long denominator);
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Parses "p/q", "p" or a finite decimal such as "0.25" or "-1.5".
    /// Returns std::nullopt for anything else (exponents, spaces, q = 0).
    static std::optional<Rational> try_parse(std::string_view text);
    /// Throwing variant of try_parse.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    /// "p" when integral, "p/q" otherwise.
    std::string str() const;
    /// Rounded decimal rendering with a fixed number of fractional digits.
    std::string decimal(int digits = 6) const;
    double to_double() const { return value_.get_d(); }

    std::string numerator_str() const { return value_.get_num().get_str(); }
    std::string denominator_str() const { return value_.get_den().get_str(); }
    /// Numerator/denominator when both fit in int64.
    std::optional<std::pair<std::int64_t, std::int64_t>> to_int64_pair() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class value_{0};
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Scales all values by the lcm of their denominators when every scaled
/// numerator has magnitude <= limit; std::nullopt otherwise.
std::optional<std::vector<std::int64_t>> scale_to_integers(std::span<const Rational> values,
                                                           std::int64_t limit);

/// 2^e for a non-negative or negative integer exponent.
Rational pow2(int exponent);

/// Exact test of r <= 2 + log2(k_minus_one) for an integer k_minus_one >= 1.
bool at_most_two_plus_log2(const Rational& r, long long k_minus_one);

}  // namespace gdof
