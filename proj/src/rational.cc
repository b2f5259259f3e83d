#include "cyclesim/rational.h"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cyclesim {

namespace {

WideInt abs128(WideInt v) { return v < 0 ? -v : v; }

WideInt gcd128(WideInt a, WideInt b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        WideInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(WideInt v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("rational component exceeds 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t numerator) : num_(numerator), den_(1) {}

Rational::Rational(WideInt numerator, WideInt denominator) {
    if (denominator == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    WideInt g = gcd128(numerator, denominator);
    if (g > 1) {
        numerator /= g;
        denominator /= g;
    }
    num_ = narrow(numerator);
    den_ = narrow(denominator);
}

Rational Rational::operator+(const Rational &other) const {
    return {static_cast<WideInt>(num_) * other.den_ + static_cast<WideInt>(other.num_) * den_,
            static_cast<WideInt>(den_) * other.den_};
}

Rational Rational::operator-(const Rational &other) const { return *this + (-other); }

Rational Rational::operator*(const Rational &other) const {
    return {static_cast<WideInt>(num_) * other.num_, static_cast<WideInt>(den_) * other.den_};
}

Rational Rational::operator/(const Rational &other) const {
    if (other.num_ == 0) {
        throw std::domain_error("division by zero rational");
    }
    return {static_cast<WideInt>(num_) * other.den_, static_cast<WideInt>(den_) * other.num_};
}

Rational Rational::operator-() const { return {-static_cast<WideInt>(num_), static_cast<WideInt>(den_)}; }

std::strong_ordering Rational::operator<=>(const Rational &other) const {
    return static_cast<WideInt>(num_) * other.den_ <=> static_cast<WideInt>(other.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
    auto parse_int = [&](std::string_view part) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return {static_cast<WideInt>(parse_int(text.substr(0, slash))),
            static_cast<WideInt>(parse_int(text.substr(slash + 1)))};
}

std::ostream &operator<<(std::ostream &out, const Rational &value) { return out << value.str(); }

ExactProb ExactProb::from_weights(WideInt kept, WideInt total) {
    if (total <= 0) {
        throw std::domain_error("probability with non-positive total weight");
    }
    return ExactProb(Rational(kept, total));
}

ExactProb::ExactProb(Rational value) : value_(value) {
    if (value_ < Rational(0) || value_ > Rational(1)) {
        throw std::domain_error("probability outside [0, 1]: " + value_.str());
    }
}

Rational ExactProb::expected_repetitions() const { return Rational(1) / value_; }

std::ostream &operator<<(std::ostream &out, const ExactProb &value) { return out << value.value(); }

}  // namespace cyclesim
