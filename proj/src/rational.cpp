#include "rmlab/rational.hpp"

#include "rmlab/errors.hpp"

#include <cctype>

namespace rmlab {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    std::size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
    if (start == text.size()) throw ParameterError("malformed rational: '" + std::string(whole) + "'");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParameterError("malformed rational: '" + std::string(whole) + "'");
    }
    BigInt v(std::string(text.substr(start)));
    return text[0] == '-' ? BigInt(-v) : v;
}

} // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0)
        value_ = boost::multiprecision::cpp_rational(BigInt(-num), BigInt(-den));
    else
        value_ = boost::multiprecision::cpp_rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.value_ == 0) throw DomainError("rational division by zero");
    value_ /= o.value_;
    return *this;
}

std::string Rational::to_string() const {
    return numerator().str() + "/" + denominator().str();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text), BigInt(1));
    return Rational(parse_integer(text.substr(0, slash), text),
                    parse_integer(text.substr(slash + 1), text));
}

} // namespace rmlab
