#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fleet {

/// Exact rational number with an int64 numerator and a positive denominator,
/// always stored in lowest terms. A zero denominator encodes +infinity, which
/// is used for unreachable legs and for tasks without a deadline.
class Rational {
public:
    constexpr Rational() noexcept = default;
    constexpr Rational(std::int64_t value) noexcept : num_(value), den_(1) {}  // NOLINT: implicit by design of arithmetic type
    Rational(std::int64_t num, std::int64_t den);

    static constexpr Rational infinity() noexcept {
        Rational r;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    /// Parses "7", "-3", "2/3", "1.25" or "inf". Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }
    constexpr bool is_infinite() const noexcept { return den_ == 0; }
    constexpr bool is_finite() const noexcept { return den_ != 0; }
    constexpr bool is_integer() const noexcept { return den_ == 1; }

    double to_double() const noexcept;
    std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& other) { return *this = *this + other; }
    Rational& operator-=(const Rational& other) { return *this = *this - other; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

/// Quantities of time (deadlines, battery, travel).
using Time = Rational;
/// Quantities of money (deployment cost, budget).
using Money = Rational;

}  // namespace fleet
