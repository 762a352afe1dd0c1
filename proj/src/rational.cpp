#include "gdof/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "gdof/errors.hpp"

namespace gdof {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

}  // namespace

Rational::Rational(long long numerator, long long denominator) {
    if (denominator == 0) throw ValidationError("rational with zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
    value_.canonicalize();
}

std::optional<Rational> Rational::try_parse(std::string_view text) {
    bool negative = false;
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    if (body.empty()) return std::nullopt;

    mpq_class value;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class n(std::string(num), 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) return std::nullopt;
        value = mpq_class(n, d);
    } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        const auto whole = body.substr(0, dot);
        const auto frac = body.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
        mpz_class n(std::string(whole) + std::string(frac), 10);
        value = mpq_class(n, d);
    } else {
        if (!all_digits(body)) return std::nullopt;
        value = mpq_class(mpz_class(std::string(body), 10));
    }
    value.canonicalize();
    if (negative) value = -value;
    return Rational(std::move(value));
}

Rational Rational::parse(std::string_view text) {
    auto r = try_parse(text);
    if (!r) throw ParseError("not an exact number: \"" + std::string(text) + "\"");
    return *r;
}

std::string Rational::str() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_str();
}

std::string Rational::decimal(int digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpq_class scaled = value_ * scale;
    // round half away from zero
    mpz_class num = abs(scaled.get_num());
    mpz_class den = scaled.get_den();
    mpz_class q = (2 * num + den) / (2 * den);
    std::string s = q.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    std::string out = sign() < 0 && q != 0 ? "-" : "";
    out += s.substr(0, s.size() - static_cast<std::size_t>(digits));
    if (digits > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(digits));
    return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> Rational::to_int64_pair() const {
    const auto& n = value_.get_num();
    const auto& d = value_.get_den();
    if (!n.fits_slong_p() || !d.fits_slong_p()) return std::nullopt;
    return std::pair<std::int64_t, std::int64_t>{n.get_si(), d.get_si()};
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ValidationError("division by zero");
    value_ /= o.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::optional<std::vector<std::int64_t>> scale_to_integers(std::span<const Rational> values,
                                                           std::int64_t limit) {
    mpz_class lcm = 1;
    for (const auto& v : values) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.raw().get_den().get_mpz_t());
        if (lcm > limit) return std::nullopt;
    }
    std::vector<std::int64_t> out;
    out.reserve(values.size());
    for (const auto& v : values) {
        mpz_class scaled = v.raw().get_num() * (lcm / v.raw().get_den());
        if (abs(scaled) > limit) return std::nullopt;
        out.push_back(scaled.get_si());
    }
    return out;
}

Rational pow2(int exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) return Rational(mpq_class(p));
    return Rational(mpq_class(mpz_class(1), p));
}

bool at_most_two_plus_log2(const Rational& r, long long k_minus_one) {
    if (k_minus_one < 1) throw ValidationError("log2 argument must be >= 1");
    // r - 2 = a/b; need a/b <= log2(k-1)  <=>  2^a <= (k-1)^b
    const Rational excess = r - Rational(2);
    if (excess.sign() <= 0) return true;
    const mpz_class a = excess.raw().get_num();
    const mpz_class b = excess.raw().get_den();
    if (!a.fits_ulong_p() || !b.fits_ulong_p()) return false;
    // cheap bracketing before exact powers
    unsigned long floor_log = 0;
    while ((2LL << floor_log) <= k_minus_one) ++floor_log;
    if (excess <= Rational(static_cast<long long>(floor_log))) return true;
    if (excess > Rational(static_cast<long long>(floor_log) + 1)) return false;
    mpz_class lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), 2, a.get_ui());
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(k_minus_one), b.get_ui());
    return lhs <= rhs;
}

}  // namespace gdof
