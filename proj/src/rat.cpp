#include "rat.hpp"

#include <boost/multiprecision/integer.hpp>

namespace shiftlab {

namespace {

BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

std::int64_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<std::int64_t>(boost::multiprecision::msb(v)) + 1;
}

} // namespace

void Rat::normalize() {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = big_gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rat Rat::pow2(std::int64_t e) {
    Rat r;
    if (e >= 0) {
        r.num_ = BigInt(1) << static_cast<unsigned>(e);
        r.den_ = 1;
    } else {
        r.num_ = 1;
        r.den_ = BigInt(1) << static_cast<unsigned>(-e);
    }
    return r;
}

Rat Rat::parse(std::string_view text) {
    auto slash = text.find('/');
    auto parse_int = [](std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rat: empty integer");
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '+' || s[0] == '-') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("Rat: bare sign");
        BigInt v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Rat: bad digit in '" + std::string(s) + "'");
            v = v * 10 + (s[i] - '0');
        }
        return neg ? BigInt(-v) : v;
    };
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    return Rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rat Rat::operator-() const {
    Rat r = *this;
    r.num_ = -r.num_;
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator*=(const Rat& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.num_ == 0) throw std::domain_error("Rat: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

int Rat::cmp(const Rat& o) const {
    BigInt lhs = num_ * o.den_;
    BigInt rhs = o.num_ * den_;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

std::string Rat::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

double Rat::approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

int cmp_pow2(std::int64_t e, const Rat& r) {
    if (r.sign() <= 0) return 1;
    // 2^e ? p/q  <=>  q*2^e ? p; decide by bit lengths first.
    const BigInt& p = r.num();
    const BigInt& q = r.den();
    std::int64_t lhs_bits = bit_length(q) + e;
    std::int64_t rhs_bits = bit_length(p);
    if (lhs_bits > rhs_bits) return 1;
    if (lhs_bits < rhs_bits) return -1;
    // Bit lengths tie; do the exact comparison.
    BigInt lhs = q;
    BigInt rhs = p;
    if (e >= 0)
        lhs <<= static_cast<unsigned>(e);
    else
        rhs <<= static_cast<unsigned>(-e);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

std::int64_t min_exp_gt(const Rat& r) {
    if (r.sign() <= 0) throw std::domain_error("min_exp_gt: requires positive rational");
    std::int64_t guess = bit_length(r.num()) - bit_length(r.den());
    std::int64_t e = guess - 2;
    while (cmp_pow2(e, r) <= 0) ++e;
    return e;
}

std::int64_t max_exp_lt(const Rat& r) {
    if (r.sign() <= 0) throw std::domain_error("max_exp_lt: requires positive rational");
    std::int64_t guess = bit_length(r.num()) - bit_length(r.den());
    std::int64_t e = guess + 2;
    while (cmp_pow2(e, r) >= 0) --e;
    return e;
}

} // namespace shiftlab
