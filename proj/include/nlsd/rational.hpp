#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nlsd {

// Thrown when an exact result no longer fits the 64-bit representation.
class exact_overflow : public std::overflow_error {
public:
    explicit exact_overflow(const std::string& what) : std::overflow_error(what) {}
};

// Exact rational with 64-bit numerator and positive 64-bit denominator,
// always stored reduced. Arithmetic runs through 128-bit intermediates and
// throws exact_overflow if a reduced result exceeds 64 bits. Numerators of
// magnitude INT64_MIN are rejected so |num| <= INT64_MAX always holds.
class Rat {
public:
    Rat() = default;
    Rat(std::int64_t n) : num_(n), den_(1) { check_small(); }
    Rat(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        reduce_from(static_cast<i128>(n), static_cast<i128>(d));
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "3/4", or just "3" when the denominator is 1.
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += std::to_string(den_);
        }
        return s;
    }

    friend Rat operator-(const Rat& a) { return Rat(-a.num_, a.den_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        Rat r;
        r.reduce_from(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
        return r;
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        Rat r;
        r.reduce_from(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
        return r;
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        Rat r;
        r.reduce_from(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
        return r;
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rat: division by zero");
        Rat r;
        r.reduce_from(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
        return r;
    }

    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

private:
    using i128 = __int128;
    using u128 = unsigned __int128;

    static u128 gcd_u128(u128 a, u128 b) {
        while (b != 0) {
            u128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void check_small() {
        if (num_ == INT64_MIN) throw exact_overflow("Rat: numerator out of range");
    }

    void reduce_from(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        u128 un = n < 0 ? static_cast<u128>(-n) : static_cast<u128>(n);
        u128 ud = static_cast<u128>(d);
        u128 g = un == 0 ? ud : gcd_u128(un, ud);
        if (g > 1) {
            un /= g;
            ud /= g;
        }
        if (un > static_cast<u128>(INT64_MAX) || ud > static_cast<u128>(INT64_MAX))
            throw exact_overflow("Rat: value does not fit 64 bits");
        num_ = n < 0 ? -static_cast<std::int64_t>(un) : static_cast<std::int64_t>(un);
        den_ = un == 0 ? 1 : static_cast<std::int64_t>(ud);
    }

    std::int64_t num_{0};
    std::int64_t den_{1};
};

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

// Parses "3", "-3/4" or a plain decimal like "0.25" / "-1.5e-2" is NOT
// accepted (no exponents); decimals must be exactly representable, which
// every finite decimal is.
std::optional<Rat> parse_rational(std::string_view s);

}  // namespace nlsd
