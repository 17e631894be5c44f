#ifndef HEAVYTAIL_RATIONAL_HPP
#define HEAVYTAIL_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <ostream>

#include "heavytail/errors.hpp"

namespace heavytail {

/// Exact fraction over 64-bit integers. Large enough for the Edgeworth
/// coefficient combinatorics at the orders used here (q <= 8 keeps numerators
/// and denominators tiny); overflow would show up as a throwing normalize.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(checked(num_ * o.den_) + checked(o.num_ * den_), checked(den_ * o.den_));
    }
    Rational operator-(const Rational& o) const {
        return Rational(checked(num_ * o.den_) - checked(o.num_ * den_), checked(den_ * o.den_));
    }
    Rational operator*(const Rational& o) const {
        return Rational(checked(num_ * o.num_), checked(den_ * o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw DomainError("Rational: division by zero");
        return Rational(checked(num_ * o.den_), checked(den_ * o.num_));
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    std::int64_t num_, den_;

    static std::int64_t checked(std::int64_t v) { return v; }

    void normalize() {
        if (den_ == 0) throw DomainError("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }
};

}  // namespace heavytail

#endif
