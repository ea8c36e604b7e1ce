#pragma once

// Exact integer/rational arithmetic with p-adic valuation bookkeeping.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace padic {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised for invalid session parameters (non-prime p, zero precision, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exact computation hits an internal inconsistency
/// (d∘d ≠ 0, a map leaving its target lattice, ...).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void require_prime(long p) {
    if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
}

/// p-adic valuation, +infinity for zero.
struct Valuation {
    bool infinite = false;
    long value = 0;

    static Valuation infinity() { return {true, 0}; }
    static Valuation of(long v) { return {false, v}; }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite || b.infinite) {
            if (a.infinite && b.infinite) return std::strong_ordering::equal;
            return a.infinite ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return a.value <=> b.value;
    }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite || b.infinite) return infinity();
        return of(a.value + b.value);
    }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
        return v.infinite ? (os << "+inf") : (os << v.value);
    }
};

/// v_p(n) for a nonzero integer; strips the p-part.
inline long strip_p(BigInt& n, long p) {
    long v = 0;
    if (n == 0) return 0;
    BigInt q, r;
    const BigInt bp = p;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), bp.get_mpz_t());
        if (r != 0) break;
        n = q;
        ++v;
    }
    return v;
}

inline Valuation valuation(const BigInt& n, long p) {
    require_prime(p);
    if (n == 0) return Valuation::infinity();
    BigInt m = abs(n);
    return Valuation::of(strip_p(m, p));
}

inline Valuation valuation(const Rational& q, long p) {
    require_prime(p);
    if (q == 0) return Valuation::infinity();
    BigInt num = abs(q.get_num());
    BigInt den = q.get_den();
    return Valuation::of(strip_p(num, p) - strip_p(den, p));
}

/// Finite-valuation shortcut for nonzero values where the caller has already
/// excluded zero and p is known prime.
inline long vp(const BigInt& n, long p) {
    BigInt m = abs(n);
    return strip_p(m, p);
}

inline BigInt pow_int(long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Exact binomial coefficient; zero when k > n.
inline BigInt binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// v_p(n!) by Legendre's formula.
inline long legendre(unsigned long n, long p) {
    long v = 0;
    unsigned long q = n;
    while (q > 0) {
        q /= static_cast<unsigned long>(p);
        v += static_cast<long>(q);
    }
    return v;
}

/// v_p(p^i / i!) = i - v_p(i!).  Non-negativity is left to the caller.
inline long p_power_over_factorial_valuation(unsigned long i, long p) {
    require_prime(p);
    return static_cast<long>(i) - legendre(i, p);
}

/// gamma^k(c) = c^k / k! for a scalar.
inline Rational divided_power_of_scalar(const Rational& c, unsigned long k) {
    Rational ck = 1;
    for (unsigned long j = 0; j < k; ++j) ck *= c;
    Rational r = ck / Rational(factorial(k));
    r.canonicalize();
    return r;
}

/// Prime-to-p part of a nonzero integer (absolute value).
inline BigInt prime_to_p_part(const BigInt& n, long p) {
    BigInt m = abs(n);
    strip_p(m, p);
    return m;
}

/// An element of Z_(p) (or Q when not p-integral) kept in lowest terms.
class PLocalRational {
public:
    PLocalRational() = default;
    PLocalRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    PLocalRational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    PLocalRational(const BigInt& num, const BigInt& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("zero denominator");
        q_.canonicalize();
    }
    explicit PLocalRational(const Rational& q) : q_(q) { q_.canonicalize(); }

    const Rational& value() const { return q_; }
    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }
    bool is_zero() const { return q_ == 0; }

    Valuation valuation(long p) const { return padic::valuation(q_, p); }
    bool is_p_integral(long p) const { return !(valuation(p) < Valuation::of(0)); }

    friend PLocalRational operator+(const PLocalRational& a, const PLocalRational& b) {
        return PLocalRational(Rational(a.q_ + b.q_));
    }
    friend PLocalRational operator-(const PLocalRational& a, const PLocalRational& b) {
        return PLocalRational(Rational(a.q_ - b.q_));
    }
    friend PLocalRational operator*(const PLocalRational& a, const PLocalRational& b) {
        return PLocalRational(Rational(a.q_ * b.q_));
    }
    friend PLocalRational operator/(const PLocalRational& a, const PLocalRational& b) {
        if (b.q_ == 0) throw std::domain_error("division by zero");
        return PLocalRational(Rational(a.q_ / b.q_));
    }
    PLocalRational operator-() const { return PLocalRational(Rational(-q_)); }
    PLocalRational& operator+=(const PLocalRational& o) { q_ += o.q_; return *this; }
    PLocalRational& operator*=(const PLocalRational& o) { q_ *= o.q_; return *this; }
    friend bool operator==(const PLocalRational& a, const PLocalRational& b) { return a.q_ == b.q_; }

    std::string str() const { return q_.get_str(); }
    friend std::ostream& operator<<(std::ostream& os, const PLocalRational& v) { return os << v.q_; }

private:
    Rational q_ = 0;
};

inline Valuation valuation(const PLocalRational& q, long p) { return q.valuation(p); }

/// Session-wide parameters shared by every computation of one run.
struct SessionConfig {
    long prime = 2;
    int precision = 8;      // residue computations are mod p^precision
    int weight = 4;         // divided-power truncation weight
    int max_degree = 3;     // highest cochain degree examined

    void validate() const {
        require_prime(prime);
        if (precision < 1) throw ConfigError("precision must be >= 1");
        if (weight < 1) throw ConfigError("weight must be >= 1");
        if (max_degree < 0) throw ConfigError("max degree must be >= 0");
    }

    BigInt modulus() const { return pow_int(prime, static_cast<unsigned long>(precision)); }
};

/// Inverse of a unit modulo m.
inline BigInt inverse_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("not invertible modulo " + m.get_str());
    return r;
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Image of a p-integral rational in Z/m for m a power of p.
inline BigInt residue(const Rational& q, const BigInt& m) {
    BigInt den = q.get_den();
    return mod_floor(BigInt(q.get_num() * inverse_mod(mod_floor(den, m), m)), m);
}

}  // namespace padic
