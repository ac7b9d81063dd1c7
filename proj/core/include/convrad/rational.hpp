#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace convrad {

// Exact rational number. All log-scale quantities in this library (lengths,
// slopes, radii, heights) are Rat; there is no floating point anywhere in the
// calculus. Backed by GMP's mpq_class, kept canonical (reduced, positive
// denominator) at all times.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}
    Rat(int n) : q_(static_cast<long>(n)) {}
    Rat(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p/q" or a bare integer "p". This is the wire format.
    static Rat parse(std::string_view s) {
        auto bad = [&] { return std::invalid_argument("Rat: cannot parse '" + std::string(s) + "'"); };
        if (s.empty()) throw bad();
        std::string str(s);
        auto slash = str.find('/');
        try {
            if (slash == std::string::npos) {
                mpq_class q(mpz_class(str), 1);
                q.canonicalize();
                return Rat(q);
            }
            mpz_class num(str.substr(0, slash));
            mpz_class den(str.substr(slash + 1));
            if (den == 0) throw bad();
            mpq_class q(num, den);
            q.canonicalize();
            return Rat(q);
        } catch (const std::invalid_argument&) {
            throw bad();
        }
    }

    // Canonical form: always "num/den", including "3/1". parse(str()) round
    // trips bit-exactly and equal rationals serialize identically.
    std::string str() const {
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    const mpq_class& mpq() const { return q_; }

    bool is_integer() const { return q_.get_den() == 1; }
    bool den_leq(unsigned long k) const { return q_.get_den() <= k; }
    int sign() const { return sgn(q_); }

    long to_long() const {
        if (!is_integer()) throw std::domain_error("Rat: not an integer: " + str());
        if (!q_.get_num().fits_slong_p()) throw std::domain_error("Rat: integer out of range: " + str());
        return q_.get_num().get_si();
    }

    double approx() const { return q_.get_d(); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.q_ == 0) throw std::domain_error("Rat: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

private:
    mpq_class q_;
};

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }
inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

}  // namespace convrad
