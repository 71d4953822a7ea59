#include "fleet/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fleet {
namespace {

__extension__ typedef __int128 Wide;

Rational from_wide(Wide num, Wide den) {
    if (den == 0) {
        throw std::domain_error("rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide a = num < 0 ? -num : num;
    Wide b = den;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
    constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) {
        throw std::overflow_error("rational: int64 overflow");
    }
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view text) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::domain_error("rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
    if (text == "inf" || text == "+inf") {
        return infinity();
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
            throw std::invalid_argument("not a number: '" + std::string(text) + "'");
        }
        bool negative = !whole.empty() && whole.front() == '-';
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        std::int64_t w = (whole.empty() || whole == "-") ? 0 : parse_int(whole);
        std::int64_t f = parse_int(frac);
        Wide num = static_cast<Wide>(w < 0 ? -w : w) * scale + f;
        return from_wide(negative ? -num : num, scale);
    }
    return Rational(parse_int(text));
}

double Rational::to_double() const noexcept {
    if (is_infinite()) {
        return std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
    if (is_infinite()) {
        return "inf";
    }
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) {
        return Rational::infinity();
    }
    if (a.den_ == b.den_) {
        return from_wide(static_cast<Wide>(a.num_) + b.num_, a.den_);
    }
    return from_wide(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                     static_cast<Wide>(a.den_) * b.den_);
}

Rational Rational::operator-() const {
    if (is_infinite()) {
        throw std::domain_error("rational: negative infinity is not representable");
    }
    return Rational(-num_, den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    if (b.is_infinite()) {
        throw std::domain_error("rational: subtracting infinity");
    }
    if (a.is_infinite()) {
        return a;
    }
    return a + (-b);
}

Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) {
        if (a == Rational(0) || b == Rational(0)) {
            throw std::domain_error("rational: 0 * infinity");
        }
        return Rational::infinity();
    }
    return from_wide(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_infinite()) {
        if (a.is_infinite()) {
            throw std::domain_error("rational: infinity / infinity");
        }
        return Rational(0);
    }
    if (b.num_ == 0) {
        throw std::domain_error("rational: division by zero");
    }
    if (a.is_infinite()) {
        if (b.num_ < 0) {
            throw std::domain_error("rational: negative infinity is not representable");
        }
        return a;
    }
    return from_wide(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    if (a.is_infinite() || b.is_infinite()) {
        return a.is_infinite() <=> b.is_infinite();
    }
    return static_cast<Wide>(a.num_) * b.den_ <=> static_cast<Wide>(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
    return os << value.to_string();
}

}  // namespace fleet
