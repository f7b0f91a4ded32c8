#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace topk {

/// Exact rational used for every score, scoring vector and bound.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(num) / Rational(den);
}

double to_double(const Rational& r);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// A ratio that is either a finite non-negative rational or +infinity.
class ExtendedRatio {
public:
    ExtendedRatio() = default;
    explicit ExtendedRatio(Rational value) : value_(std::move(value)) {}

    static ExtendedRatio infinity() {
        ExtendedRatio r;
        r.infinite_ = true;
        return r;
    }

    /// numerator / denominator, infinity when the denominator is zero.
    /// 0/0 is taken as 1: both sides scored the same.
    static ExtendedRatio quotient(const Rational& numerator, const Rational& denominator);

    [[nodiscard]] bool is_infinite() const { return infinite_; }
    /// Only meaningful when finite.
    [[nodiscard]] const Rational& value() const { return value_; }
    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const ExtendedRatio& a, const ExtendedRatio& b);
    friend std::partial_ordering operator<=>(const ExtendedRatio& a, const ExtendedRatio& b);

private:
    Rational value_{1};
    bool infinite_ = false;
};

}  // namespace topk
