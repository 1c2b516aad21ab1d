#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace periods {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;
using Vq  = boost::rational<long>;  // valuations, denominator divides the ramification index

// Large sentinel for "exact" precision. Kept well below overflow range so
// that sums of precisions stay representable.
inline constexpr long PREC_INF = 1L << 28;

struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& m) : std::runtime_error(m) {}
};

inline Int ppow(uint64_t p, long e) {
    if (e < 0) throw std::invalid_argument("ppow: negative exponent");
    Int r(1), b(p);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Int mod_inverse(Int a, const Int& m) {
    Int g = m, x = 0, x1 = 1;
    a %= m;
    if (a < 0) a += m;
    Int b = a;
    while (b != 0) {
        Int q = g / b;
        Int t = g - q * b; g = b; b = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1) throw std::domain_error("mod_inverse: not invertible");
    x %= m;
    if (x < 0) x += m;
    return x;
}

// Scalar in Q_p with capped-relative precision: value = u * p^v, u a unit
// known modulo p^r.  Zero is u == 0 with v = absolute precision bound, i.e.
// the value is O(p^v).
class Qp {
    uint64_t p_ = 0;
    Int u_;
    long v_ = 0;
    long r_ = 0;

    void strip() {
        if (u_ == 0) { r_ = 0; return; }
        Int P(p_);
        while (u_ % P == 0) { u_ /= P; ++v_; --r_; }
        if (r_ <= 0) { u_ = 0; r_ = 0; }  // v_ is now the absolute precision
    }

public:
    Qp() = default;
    // inexact zero O(p^abs_prec)
    Qp(uint64_t p, long abs_prec) : p_(p), u_(0), v_(abs_prec), r_(0) {}

    static Qp zero(uint64_t p, long abs_prec = PREC_INF) { return Qp(p, abs_prec); }

    static Qp from_int(uint64_t p, Int n, long abs_prec) {
        if (n == 0) return zero(p, abs_prec);
        long v = 0;
        Int P(p);
        while (n % P == 0) { n /= P; ++v; }
        Qp x(p, 0);
        x.v_ = v;
        if (abs_prec >= PREC_INF) {
            x.r_ = PREC_INF;
            x.u_ = std::move(n);
            return x;
        }
        x.r_ = abs_prec - v;
        if (x.r_ <= 0) return zero(p, abs_prec);
        Int m = ppow(p, x.r_);
        x.u_ = n % m;
        if (x.u_ < 0) x.u_ += m;
        if (x.u_ == 0) return zero(p, abs_prec);
        return x;
    }

    static Qp from_rational(uint64_t p, const Rat& q, long abs_prec) {
        if (q.numerator() == 0) return zero(p, abs_prec);
        Int num = q.numerator(), den = q.denominator();
        long v = 0;
        Int P(p);
        while (num % P == 0) { num /= P; ++v; }
        while (den % P == 0) { den /= P; --v; }
        if (den == 1 || den == -1) return from_int(p, den == -1 ? -num : num, abs_prec).shift(v);
        if (abs_prec >= PREC_INF)
            throw std::invalid_argument("Qp::from_rational: non-p-power denominator needs finite precision");
        long r = abs_prec - v;
        if (r <= 0) return zero(p, abs_prec);
        Int m = ppow(p, r);
        Int u = (num % m) * mod_inverse(den, m) % m;
        if (u < 0) u += m;
        Qp x(p, 0);
        x.u_ = u; x.v_ = v; x.r_ = r;
        x.strip();
        if (x.u_ == 0) return zero(p, abs_prec);
        return x;
    }

    uint64_t prime() const { return p_; }
    bool is_zero() const { return u_ == 0; }
    bool is_exact_zero() const { return u_ == 0 && v_ >= PREC_INF; }
    // valuation; for an inexact zero this is the precision bound (val >= v_)
    long val() const { return v_; }
    long rel_prec() const { return r_; }
    long abs_prec() const {
        if (u_ == 0) return v_;
        if (r_ >= PREC_INF) return PREC_INF;
        return v_ + r_;
    }
    const Int& unit() const { return u_; }

    Qp cap(long abs) const {
        if (abs >= abs_prec()) return *this;
        Qp x = *this;
        if (x.u_ == 0) { x.v_ = abs; return x; }
        x.r_ = abs - x.v_;
        if (x.r_ <= 0) { x.u_ = 0; x.r_ = 0; x.v_ = abs; return x; }
        Int m = ppow(p_, x.r_);
        x.u_ %= m;
        if (x.u_ < 0) x.u_ += m;
        if (x.u_ == 0) { x.r_ = 0; x.v_ = abs; }
        return x;
    }

    // representative integer u * p^v reduced mod p^abs; requires v_ >= 0
    Int lift(long abs) const {
        if (u_ == 0) return Int(0);
        if (v_ < 0) throw precision_error("lift: negative valuation");
        long d = abs - v_;
        if (d <= 0) return Int(0);
        Int m = ppow(p_, std::min(d, r_));
        Int u = u_ % m;
        if (u < 0) u += m;
        return u * ppow(p_, v_);
    }

    friend Qp operator+(const Qp& a, const Qp& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("Qp: prime mismatch");
        long ap = std::min(a.abs_prec(), b.abs_prec());
        if (a.u_ == 0 && b.u_ == 0) return zero(a.p_, ap);
        if (a.u_ == 0) return b.cap(ap);
        if (b.u_ == 0) return a.cap(ap);
        long v = std::min(a.v_, b.v_);
        Int s = a.u_ * ppow(a.p_, a.v_ - v) + b.u_ * ppow(a.p_, b.v_ - v);
        if (ap >= PREC_INF) {
            if (s == 0) return zero(a.p_, PREC_INF);
            Qp x(a.p_, 0);
            x.u_ = std::move(s); x.v_ = v; x.r_ = PREC_INF;
            x.strip();
            x.r_ = PREC_INF;
            return x;
        }
        long d = ap - v;
        if (d <= 0) return zero(a.p_, ap);
        Int m = ppow(a.p_, d);
        s %= m;
        if (s < 0) s += m;
        if (s == 0) return zero(a.p_, ap);
        Qp x(a.p_, 0);
        x.u_ = std::move(s); x.v_ = v; x.r_ = d;
        x.strip();
        if (x.u_ == 0) return zero(a.p_, ap);
        x.r_ = ap - x.v_;
        if (x.r_ <= 0) return zero(a.p_, ap);
        return x;
    }

    Qp operator-() const {
        if (u_ == 0) return *this;
        Qp x = *this;
        if (x.r_ >= PREC_INF) { x.u_ = -x.u_; return x; }
        Int m = ppow(p_, x.r_);
        x.u_ = (m - x.u_ % m) % m;
        if (x.u_ == 0) { x.r_ = 0; x.v_ = abs_prec(); }
        return x;
    }

    friend Qp operator-(const Qp& a, const Qp& b) { return a + (-b); }

    friend Qp operator*(const Qp& a, const Qp& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("Qp: prime mismatch");
        if (a.u_ == 0 || b.u_ == 0) {
            if (a.is_exact_zero() || b.is_exact_zero()) return zero(a.p_);
            long bound = a.v_ + b.v_;  // O(p^m) * (p^v * unit or O(p^v))
            return zero(a.p_, std::min((long)PREC_INF, bound));
        }
        Qp x(a.p_, 0);
        x.v_ = a.v_ + b.v_;
        x.r_ = std::min(a.r_, b.r_);
        if (x.r_ >= PREC_INF) { x.u_ = a.u_ * b.u_; x.r_ = PREC_INF; return x; }
        Int m = ppow(a.p_, x.r_);
        x.u_ = a.u_ * b.u_ % m;
        return x;
    }

    // inverse at min(relative precision, PREC_INF/2) digits
    Qp inverse() const {
        if (u_ == 0) throw precision_error("Qp: inverting zero at precision O(p^" + std::to_string(v_) + ")");
        Qp x(p_, 0);
        x.v_ = -v_;
        long d = std::min(r_, PREC_INF / 2);
        Int m = ppow(p_, d);
        Int u = u_ % m;
        if (u < 0) u += m;
        x.u_ = mod_inverse(u, m);
        x.r_ = (r_ >= PREC_INF) ? d : r_;
        return x;
    }

    friend Qp operator/(const Qp& a, const Qp& b) { return a * b.inverse(); }

    Qp pow(long e) const {
        if (e == 0) return from_int(p_, 1, PREC_INF);
        Qp base = e < 0 ? inverse() : *this;
        long n = e < 0 ? -e : e;
        Qp acc = from_int(p_, 1, PREC_INF);
        while (n) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    // x * p^k
    Qp shift(long k) const {
        Qp x = *this;
        x.v_ += k;
        return x;
    }

    // true if a and b agree at the min of their precisions
    friend bool same(const Qp& a, const Qp& b) { return (a - b).is_zero(); }

    long residue() const {  // image in F_p for integral x
        if (u_ == 0) {
            if (v_ <= 0) throw precision_error("residue: no digits known");
            return 0;
        }
        if (v_ < 0) throw std::domain_error("residue: negative valuation");
        if (v_ > 0) return 0;
        Int r = u_ % Int(p_);
        if (r < 0) r += Int(p_);
        return (long)r;
    }

    std::string str() const {
        if (u_ == 0) return v_ >= PREC_INF ? "0" : "O(" + std::to_string(p_) + "^" + std::to_string(v_) + ")";
        std::string s = u_.str();
        if (v_ != 0) s += "*" + std::to_string(p_) + "^" + std::to_string(v_);
        if (r_ < PREC_INF) s += " + O(" + std::to_string(p_) + "^" + std::to_string(abs_prec()) + ")";
        return s;
    }
};

}  // namespace periods
