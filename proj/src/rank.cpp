#include "ppicod/rank.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace ppicod {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_int(text.substr(0, slash), whole);
        const auto den = parse_int(text.substr(slash + 1), whole);
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
        }
        return {num, den};
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto int_part = text.substr(0, dot);
        const auto frac_part = text.substr(dot + 1);
        if (frac_part.size() > 15 || frac_part.find_first_not_of("0123456789") != std::string_view::npos) {
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
        }
        const bool negative = !int_part.empty() && int_part.front() == '-';
        const std::int64_t ip =
            (int_part.empty() || int_part == "-" || int_part == "+") ? 0 : parse_int(int_part, whole);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) {
            den *= 10;
        }
        const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
        if (int_part.empty() && frac_part.empty()) {
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
        }
        const Rational magnitude = Rational(negative ? -ip : ip) + Rational(fp, den);
        return negative ? -magnitude : magnitude;
    }
    return {parse_int(text, whole), 1};
}

std::string format_rational(const Rational& value) {
    if (value.denominator() == 1) {
        return std::to_string(value.numerator());
    }
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

std::strong_ordering compare(const Rational& a, const Rational& b) {
    // Denominators are positive after normalization; 128-bit cross products are exact.
    __extension__ using wide = __int128;
    const wide lhs = static_cast<wide>(a.numerator()) * b.denominator();
    const wide rhs = static_cast<wide>(b.numerator()) * a.denominator();
    return lhs <=> rhs;
}

std::strong_ordering Rank::operator<=>(const Rank& rhs) const {
    if (is_infinite() || rhs.is_infinite()) {
        return static_cast<int>(is_infinite()) <=> static_cast<int>(rhs.is_infinite());
    }
    return compare(*value_, *rhs.value_);
}

}  // namespace ppicod
