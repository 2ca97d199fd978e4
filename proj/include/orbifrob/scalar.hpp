#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "orbifrob/errors.hpp"

namespace orbifrob {

/// Exact rational number backed by GMP. Always canonical (lowest terms,
/// positive denominator).
class Scalar {
public:
    Scalar() = default;

    template <std::integral I>
    Scalar(I value) {  // NOLINT: implicit on purpose, integers are scalars
        if constexpr (std::is_signed_v<I>) {
            value_ = static_cast<long>(value);
        } else {
            value_ = static_cast<unsigned long>(value);
        }
    }

    Scalar(long num, long den) {
        if (den == 0) throw DivisionByZero("zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }

    explicit Scalar(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Parses "p", "-p" or "p/q" with decimal integers.
    static Scalar parse(std::string_view text) {
        auto digits = [](std::string_view s, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
            if (i == s.size()) return false;
            for (; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') return false;
            }
            return true;
        };
        const auto slash = text.find('/');
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
        if (!digits(num, true) || (slash != std::string_view::npos && !digits(den, false))) {
            throw ParseError("not a rational literal: '" + std::string(text) + "'");
        }
        std::string n(num);
        if (!n.empty() && n[0] == '+') n.erase(0, 1);
        mpz_class top(n, 10);
        mpz_class bottom = 1;
        if (slash != std::string_view::npos) bottom = mpz_class(std::string(den), 10);
        if (bottom == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Scalar(mpq_class(top, bottom));
    }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (value_.get_den() == 1) return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    int sign() const { return sgn(value_); }
    bool is_integer() const { return value_.get_den() == 1; }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        return Scalar(mpq_class(1) / value_);
    }

    const mpq_class& raw() const { return value_; }

    Scalar& operator+=(const Scalar& o) { value_ += o.value_; return *this; }
    Scalar& operator-=(const Scalar& o) { value_ -= o.value_; return *this; }
    Scalar& operator*=(const Scalar& o) { value_ *= o.value_; return *this; }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw DivisionByZero("division by zero");
        value_ /= o.value_;
        return *this;
    }

    /// this += a * b without a temporary Scalar.
    void add_product(const Scalar& a, const Scalar& b) {
        thread_local mpq_class tmp;
        mpq_mul(tmp.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
        value_ += tmp;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.value_)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    mpq_class value_{0};
};

/// (-1)^k as a Scalar.
inline Scalar sign_power(long k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace orbifrob
