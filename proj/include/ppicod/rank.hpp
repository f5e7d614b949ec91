#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Boost 1.74's mixed rational/integer operator== recurses forever under C++20's
// reversed-operator rules. Exact non-template overloads win overload resolution.
namespace boost {
#define PPICOD_RATIONAL_EQ(T)                                                                       \
    inline bool operator==(const rational<std::int64_t>& a, T b) {                                 \
        return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);              \
    }                                                                                               \
    inline bool operator==(T b, const rational<std::int64_t>& a) { return a == b; }
PPICOD_RATIONAL_EQ(int)
PPICOD_RATIONAL_EQ(long)
PPICOD_RATIONAL_EQ(long long)
PPICOD_RATIONAL_EQ(unsigned)
#undef PPICOD_RATIONAL_EQ
}  // namespace boost

namespace ppicod {

using Rational = boost::rational<std::int64_t>;

/// Parses "7", "-3/4" or a decimal such as "0.05" (converted exactly to 1/20).
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// "7" for integers, "num/den" otherwise.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

/// A preference rank: an exact rational or infinity (side information).
class Rank {
public:
    Rank() : value_(std::nullopt) {}
    Rank(Rational value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rank(std::int64_t value) : value_(Rational(value)) {}  // NOLINT(google-explicit-constructor)

    static Rank infinity() { return Rank(); }

    [[nodiscard]] bool is_infinite() const { return !value_.has_value(); }
    [[nodiscard]] bool is_finite() const { return value_.has_value(); }
    /// Precondition: finite.
    [[nodiscard]] const Rational& value() const { return *value_; }

    bool operator==(const Rank& rhs) const { return value_ == rhs.value_; }
    std::strong_ordering operator<=>(const Rank& rhs) const;

private:
    std::optional<Rational> value_;
};

std::strong_ordering compare(const Rational& a, const Rational& b);

}  // namespace ppicod
