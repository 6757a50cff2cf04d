#ifndef SIZERAMSEY_RATIONAL_HPP
#define SIZERAMSEY_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "sizeramsey/errors.hpp"

namespace sizeramsey {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline BigInt floor(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    BigInt quot = num / den;
    if (num < 0 && quot * den != num) --quot;
    return quot;
}

inline BigInt ceil(const Rational& q) {
    BigInt f = floor(q);
    return f == q ? f : f + 1;
}

inline std::int64_t to_int64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

namespace detail {

inline BigInt parse_integer(std::string_view s, std::string_view whole) {
    if (s.empty()) throw ParseError("empty integer in rational '" + std::string(whole) + "'");
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw ParseError("invalid rational '" + std::string(whole) + "'");
        }
    }
    // Leading zeros would make the string constructor read octal.
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    return BigInt(std::string(s));
}

}  // namespace detail

// Accepts "7", "-3/4", "0.05", "1e-3" (decimal forms are read exactly, never
// through binary floating point).
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = detail::parse_integer(s.substr(0, slash), text);
        BigInt den = detail::parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        value = Rational(num, den);
    } else {
        std::int64_t exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view ex = s.substr(e + 1);
            bool neg_exp = false;
            if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
                neg_exp = ex.front() == '-';
                ex.remove_prefix(1);
            }
            exponent = to_int64(detail::parse_integer(ex, text));
            if (exponent > 4096) throw ParseError("exponent too large in '" + std::string(text) + "'");
            if (neg_exp) exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string digits;
        std::int64_t scale = 0;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
            scale = static_cast<std::int64_t>(s.size() - dot - 1);
            if (digits.empty()) throw ParseError("invalid rational '" + std::string(text) + "'");
        } else {
            digits = std::string(s);
        }
        BigInt mantissa = detail::parse_integer(digits, text);
        std::int64_t power = exponent - scale;
        BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(power < 0 ? -power : power));
        value = power >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
    }
    return negative ? Rational(-value) : value;
}

// Exact value of a finite double.
inline Rational from_double(double x) { return Rational(x); }

inline Rational binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return Rational(0);
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return Rational(result);
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_RATIONAL_HPP
