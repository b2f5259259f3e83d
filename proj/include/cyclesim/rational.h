#ifndef CYCLESIM_RATIONAL_H
#define CYCLESIM_RATIONAL_H

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cyclesim {

/// 128-bit signed integer for intermediate sums and products.
__extension__ typedef __int128 WideInt;

/// Reduced fraction with a positive denominator.
///
/// Intermediate products are formed in 128 bits and reduced before being
/// stored; construction throws std::overflow_error if the reduced value does
/// not fit in 64 bits.
class Rational {
   public:
    constexpr Rational() = default;
    Rational(std::int64_t numerator);  // NOLINT(google-explicit-constructor)
    Rational(WideInt numerator, WideInt denominator);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational &other) const;
    Rational operator-(const Rational &other) const;
    Rational operator*(const Rational &other) const;
    Rational operator/(const Rational &other) const;
    Rational operator-() const;
    Rational &operator+=(const Rational &other) { return *this = *this + other; }

    bool operator==(const Rational &other) const = default;
    std::strong_ordering operator<=>(const Rational &other) const;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const;
    static Rational parse(std::string_view text);

   private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream &operator<<(std::ostream &out, const Rational &value);

/// Probability of a post-selection outcome, kept as an exact fraction in [0, 1].
class ExactProb {
   public:
    /// Ratio of the squared norm carried by the kept terms to the total squared norm.
    static ExactProb from_weights(WideInt kept, WideInt total);
    explicit ExactProb(Rational value);

    const Rational &value() const { return value_; }
    /// Mean number of repetitions until the outcome is observed, 1/p.
    Rational expected_repetitions() const;

    bool operator==(const ExactProb &other) const = default;
    std::string str() const { return value_.str(); }

   private:
    Rational value_;
};

std::ostream &operator<<(std::ostream &out, const ExactProb &value);

}  // namespace cyclesim

#endif
