/**
 * Exact rational numbers.
 *
 * Values live in a pair of int64_t as long as numerator and denominator fit;
 * any operation whose reduced result does not fit is redone with GMP and the
 * result is kept as an immutable shared mpq_class. Results that fit again are
 * demoted back to the small representation, so equal values always have equal
 * representations.
 */
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dressian {

class Rational {
public:
    Rational() = default;
    Rational(int v) : num_(v) {}
    Rational(long v) : num_(v) {}
    Rational(long long v) : num_(v) {}
    Rational(std::int64_t num, std::int64_t den) { assign_i128(num, den); }
    explicit Rational(const mpq_class& q) { assign_mpq(q); }
    explicit Rational(const mpz_class& z) { assign_mpq(mpq_class(z)); }

    bool is_small() const { return !big_; }
    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    int sign() const {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q;
        mpz_set_si_64(q.get_num_mpz_t(), num_);
        mpz_set_si_64(q.get_den_mpz_t(), den_);
        return q;
    }
    mpz_class numerator() const { return to_mpq().get_num(); }
    mpz_class denominator() const { return to_mpq().get_den(); }

    Rational operator-() const {
        if (big_) return Rational(mpq_class(-*big_));
        if (num_ == INT64_MIN) return Rational(mpq_class(-to_mpq()));
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t s;
                if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
            }
            Rational r;
            r.assign_i128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                          static_cast<__int128>(a.den_) * b.den_);
            return r;
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t s;
                if (!__builtin_sub_overflow(a.num_, b.num_, &s)) return Rational(s);
            }
            Rational r;
            r.assign_i128(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                          static_cast<__int128>(a.den_) * b.den_);
            return r;
        }
        return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.num_ == 0 || b.num_ == 0) return Rational();
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t s;
                if (!__builtin_mul_overflow(a.num_, b.num_, &s)) return Rational(s);
            }
            Rational r;
            r.assign_i128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
            return r;
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        if (!a.big_ && !b.big_) {
            Rational r;
            r.assign_i128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
            return r;
        }
        return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;
        return *a.big_ == *b.big_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == b.den_) return a.num_ <=> b.num_;
            __int128 l = static_cast<__int128>(a.num_) * b.den_;
            __int128 r = static_cast<__int128>(b.num_) * a.den_;
            return l < r ? std::strong_ordering::less
                         : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        int c = cmp(a.to_mpq(), b.to_mpq());
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// "p/q" or "p" with an ASCII minus sign.
    std::string to_string() const {
        if (big_) return big_->get_str();
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "p", "p/q", "-p/q", and the Unicode minus sign U+2212.
    static Rational parse(std::string_view text) {
        std::string s;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text.substr(i, 3) == "\xE2\x88\x92") {
                s.push_back('-');
                i += 2;
            } else if (text[i] != ' ') {
                s.push_back(text[i]);
            }
        }
        if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
        mpq_class q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0)
            throw std::invalid_argument("Rational::parse: malformed rational '" + std::string(text) + "'");
        q.canonicalize();
        return Rational(q);
    }

    std::size_t hash() const {
        if (!big_) return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
        return std::hash<std::string>{}(big_->get_str());
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;

    static void mpz_set_si_64(mpz_ptr z, std::int64_t v) {
        if (v >= LONG_MIN && v <= LONG_MAX) {
            mpz_set_si(z, static_cast<long>(v));
            return;
        }
        unsigned __int128 mag = v < 0 ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        set_u128(z, mag);
        if (v < 0) mpz_neg(z, z);
    }
    static void set_u128(mpz_ptr z, unsigned __int128 v) {
        mpz_set_ui(z, static_cast<unsigned long>(v >> 64));
        mpz_mul_2exp(z, z, 64);
        mpz_add_ui(z, z, static_cast<unsigned long>(v & 0xFFFFFFFFFFFFFFFFull));
    }
    static unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
        while (b != 0) {
            if ((a >> 64) == 0 && (b >> 64) == 0) {
                std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
                while (y != 0) {
                    std::uint64_t t = x % y;
                    x = y;
                    y = t;
                }
                return x;
            }
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void assign_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            big_.reset();
            return;
        }
        unsigned __int128 mag = n < 0 ? -static_cast<unsigned __int128>(n) : static_cast<unsigned __int128>(n);
        unsigned __int128 g = gcd_u128(mag, static_cast<unsigned __int128>(d));
        mag /= g;
        d /= g;
        constexpr unsigned __int128 lim = static_cast<unsigned __int128>(INT64_MAX);
        if (mag <= lim && static_cast<unsigned __int128>(d) <= lim) {
            num_ = n < 0 ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
            return;
        }
        mpq_class q;
        set_u128(q.get_num_mpz_t(), mag);
        if (n < 0) mpz_neg(q.get_num_mpz_t(), q.get_num_mpz_t());
        set_u128(q.get_den_mpz_t(), static_cast<unsigned __int128>(d));
        big_ = std::make_shared<const mpq_class>(std::move(q));
        num_ = 0;
        den_ = 1;
    }

    void assign_mpq(const mpq_class& q) {
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
            num_ = q.get_num().get_si();
            den_ = q.get_den().get_si();
            big_.reset();
        } else {
            big_ = std::make_shared<const mpq_class>(q);
            num_ = 0;
            den_ = 1;
        }
    }
};

using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace dressian

template <>
struct std::hash<dressian::Rational> {
    std::size_t operator()(const dressian::Rational& r) const noexcept { return r.hash(); }
};
