#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shiftlab {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational with normalized sign (den > 0) and gcd-reduced terms.
// All library arithmetic that feeds a verdict goes through this type or
// through dyadic exponents; doubles appear only in the simulation oracle.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(BigInt n) : num_(std::move(n)), den_(1) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rat pow2(std::int64_t e);
    // Parses "123", "-4/7", "2/6" (reduced on construction).
    static Rat parse(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    // Three-way comparison via cross multiplication.
    int cmp(const Rat& o) const;
    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.cmp(b) >= 0; }

    std::string str() const;
    double approx() const;

private:
    void normalize();

    BigInt num_;
    BigInt den_;
};

// Exact comparison of 2^e against a positive rational, without building
// 2^e when bit lengths already decide. Returns -1, 0, +1.
int cmp_pow2(std::int64_t e, const Rat& r);

// Least integer e with 2^e > r (r > 0).
std::int64_t min_exp_gt(const Rat& r);

// Greatest integer e with 2^e < r (r > 0).
std::int64_t max_exp_lt(const Rat& r);

} // namespace shiftlab
