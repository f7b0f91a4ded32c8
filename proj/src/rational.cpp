#include "topk/rational.hpp"

#include <limits>

namespace topk {

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

std::string to_string(const Rational& r) {
    return r.str();
}

ExtendedRatio ExtendedRatio::quotient(const Rational& numerator, const Rational& denominator) {
    if (numerator == denominator) {
        return ExtendedRatio(Rational(1));
    }
    if (denominator == 0) {
        return infinity();
    }
    return ExtendedRatio(numerator / denominator);
}

double ExtendedRatio::to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : topk::to_double(value_);
}

std::string ExtendedRatio::to_string() const {
    return infinite_ ? "inf" : topk::to_string(value_);
}

bool operator==(const ExtendedRatio& a, const ExtendedRatio& b) {
    if (a.infinite_ || b.infinite_) {
        return a.infinite_ == b.infinite_;
    }
    return a.value_ == b.value_;
}

std::partial_ordering operator<=>(const ExtendedRatio& a, const ExtendedRatio& b) {
    if (a.infinite_ || b.infinite_) {
        if (a.infinite_ == b.infinite_) {
            return std::partial_ordering::equivalent;
        }
        return a.infinite_ ? std::partial_ordering::greater : std::partial_ordering::less;
    }
    if (a.value_ < b.value_) {
        return std::partial_ordering::less;
    }
    if (b.value_ < a.value_) {
        return std::partial_ordering::greater;
    }
    return std::partial_ordering::equivalent;
}

}  // namespace topk
