#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>

#include "latfold/errors.hpp"

namespace latfold {

// Exact rational number over checked 64-bit integers.
//
// Everything the lattice produces has denominators dividing 4*3^k (bond
// vectors contribute the 4, every cis flip one factor of 3), so values stay
// tiny for desk-scale chains. Intermediates are computed in 128 bits and any
// result that does not reduce back into 64 bits throws exactness_error
// instead of silently rounding.
class Rational {
  public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw domain_error("rational with zero denominator");
        init(static_cast<__int128>(n), static_cast<__int128>(d));
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ +
                        static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ -
                        static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.num_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw domain_error("rational division by zero");
        return make(static_cast<__int128>(a.num_) * b.den_,
                    static_cast<__int128>(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;  // canonical form
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    static Rational make(__int128 n, __int128 d) {
        Rational r;
        r.init(n, d);
        return r;
    }

    void init(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            return;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        n /= g;
        d /= g;
        constexpr __int128 lo = INT64_MIN;
        constexpr __int128 hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw exactness_error("rational value exceeds exact 64-bit range");
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t num_;
    std::int64_t den_;  // > 0, gcd(|num_|, den_) == 1
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace latfold

template <>
struct std::hash<latfold::Rational> {
    std::size_t operator()(const latfold::Rational& r) const noexcept {
        std::size_t h = std::hash<std::int64_t>{}(r.num());
        h ^= std::hash<std::int64_t>{}(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};
