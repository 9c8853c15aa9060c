#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nslab {

// Exact rational arithmetic for the scaling exponents. The values involved
// are tiny (things like 10/3 and 5/6), so int64 never comes close to
// overflowing here.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator+(const Rational& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
    Rational operator-(const Rational& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
    Rational operator*(const Rational& o) const { return {num_ * o.num_, den_ * o.den_}; }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return {num_ * o.den_, den_ * o.num_};
    }
    Rational operator-() const { return {-num_, den_}; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Recognize a double as a small-denominator rational (used when formatting
// Lebesgue exponents such as 10/3 in CSV output). Returns true iff num/den
// rounds to exactly x.
inline bool as_small_rational(double x, std::int64_t& num, std::int64_t& den, std::int64_t max_den = 64) {
    for (std::int64_t d = 1; d <= max_den; ++d) {
        const double scaled = x * static_cast<double>(d);
        if (scaled < -1e15 || scaled > 1e15) return false;
        const auto n = static_cast<std::int64_t>(scaled >= 0 ? scaled + 0.5 : scaled - 0.5);
        if (static_cast<double>(n) / static_cast<double>(d) == x) {
            const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
            num = n / (g ? g : 1);
            den = d / (g ? g : 1);
            return true;
        }
    }
    return false;
}

}  // namespace nslab
