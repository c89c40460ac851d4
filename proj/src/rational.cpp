#include "cdl/rational.hpp"

#include <limits>
#include <ostream>

#include "cdl/error.hpp"

namespace cdl {

namespace {

std::optional<std::int64_t> narrow(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        return std::nullopt;
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ValidationError("zero denominator");
    value_ = boost::multiprecision::cpp_rational(num, den);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.value_ == 0) throw ValidationError("division by zero");
    return Rational(a.value_ / b.value_);
}

std::optional<std::int64_t> Rational::numerator_i64() const { return narrow(numerator()); }
std::optional<std::int64_t> Rational::denominator_i64() const { return narrow(denominator()); }

std::string Rational::decimal(unsigned digits) const {
    BigInt num = numerator();
    const BigInt den = denominator();
    const bool negative = num < 0;
    if (negative) num = -num;
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    // round half up on the magnitude
    BigInt scaled = (num * scale * 2 + den) / (den * 2);
    BigInt whole = scaled / scale;
    BigInt frac = scaled % scale;
    std::string out = negative && scaled != 0 ? "-" : "";
    out += whole.str();
    if (digits > 0) {
        std::string f = frac.str();
        out += '.';
        out += std::string(digits - f.size(), '0');
        out += f;
    }
    return out;
}

std::string Rational::str() const {
    if (denominator() == 1) return numerator().str();
    return numerator().str() + "/" + denominator().str();
}

double Rational::to_double() const { return value_.convert_to<double>(); }

Rational Rational::pow(unsigned k) const {
    boost::multiprecision::cpp_rational r = 1;
    for (unsigned i = 0; i < k; ++i) r *= value_;
    return Rational(r);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace cdl
