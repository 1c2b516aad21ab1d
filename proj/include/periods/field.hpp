#pragma once

#include "periods/linalg.hpp"
#include "periods/qp.hpp"

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace periods {

class PadicField;
using FieldPtr = std::shared_ptr<const PadicField>;
class FElt;

// A p-adic field in canonical two-level form: an unramified part
// U = Q_p[w]/(h) of degree f (h a monic integer lift of an irreducible
// polynomial over F_p) and a totally ramified part defined by an Eisenstein
// polynomial E(y) = y^e + sum_{j<e} E_j y^j with E_j in U.
//
// Elements are coordinate vectors over the basis w^i * pi^j (i < f, j < e),
// index j*f + i.  In this basis valuation reads off coordinate-wise, which
// keeps residue and precision bookkeeping exact.
class PadicField : public std::enable_shared_from_this<PadicField> {
public:
    uint64_t p;
    int f = 1, e = 1;
    long prec;                    // working absolute scalar precision
    std::vector<long> hbar;       // h mod p, coeffs in [0,p), degree f (monic, h[f]==1 implicit)
    std::vector<QpVec> eis;       // E_j for j < e, each a U-coordinate vector of length f
    std::vector<std::string> provenance;

    // caches (filled by finalize)
    QpVec inv_pi_coords;          // coordinates of pi^{-1}
    QpVec u0_coords;              // coordinates of pi^e / p (a unit; = 1 when e == 1)
    QpVec frob_w_coords;          // Frobenius image of w (root of h over residue w̄^p)

    int dim() const { return e * f; }

    static FieldPtr make_qp(uint64_t p, long prec);

    inline FElt elt(QpVec coords) const;
    inline FElt zero() const;
    inline FElt one() const;
    inline FElt from_int(const Int& n) const;
    inline FElt from_rational(const Rat& q) const;
    inline FElt gen_w() const;   // unramified generator (w = 1 if f == 1)
    inline FElt gen_pi() const;  // uniformizer (p itself if e == 1)

    // ---- residue field F_q = F_p[x]/(hbar) ----
    using Fq = std::vector<long>;
    Fq fq_zero() const { return Fq(f, 0); }
    Fq fq_one() const { Fq r(f, 0); r[0] = 1; return r; }
    bool fq_is_zero(const Fq& a) const {
        for (long x : a) if (x) return false;
        return true;
    }
    Fq fq_add(const Fq& a, const Fq& b) const {
        Fq r(f);
        for (int i = 0; i < f; ++i) r[i] = (long)(((__int128)a[i] + b[i]) % (long)p);
        return r;
    }
    Fq fq_neg(const Fq& a) const {
        Fq r(f);
        for (int i = 0; i < f; ++i) r[i] = a[i] ? (long)p - a[i] : 0;
        return r;
    }
    Fq fq_mul(const Fq& a, const Fq& b) const {
        std::vector<long> c(2 * f - 1, 0);
        for (int i = 0; i < f; ++i)
            for (int j = 0; j < f; ++j) c[i + j] = (long)(((__int128)c[i + j] + (__int128)a[i] * b[j]) % (long)p);
        for (int k = 2 * f - 2; k >= f; --k) {
            long t = c[k];
            if (!t) continue;
            c[k] = 0;
            for (int i = 0; i < f; ++i)
                c[k - f + i] = (long)(((__int128)c[k - f + i] + (__int128)(p - (unsigned long)hbar[i] % p) * t) % (long)p);
        }
        c.resize(f);
        return c;
    }
    Fq fq_pow(Fq a, Int n) const {
        Fq r = fq_one();
        Int q1 = ppow(p, f) - 1;
        n %= q1;
        if (n < 0) n += q1;
        while (n != 0) {
            if (n % 2 != 0) r = fq_mul(r, a);
            a = fq_mul(a, a);
            n /= 2;
        }
        return r;
    }
    Fq fq_inv(const Fq& a) const {
        if (fq_is_zero(a)) throw std::domain_error("fq_inv: zero");
        return fq_pow(a, ppow(p, f) - 2);
    }
    // p-th root in F_q (Frobenius is bijective)
    Fq fq_proot(const Fq& a) const { return fq_pow(a, ppow(p, f - 1)); }

    inline FElt fq_lift(const Fq& a) const;  // integer-coefficient lift

    void finalize();

    std::string describe() const {
        std::ostringstream os;
        os << "Q_" << p << " field (f=" << f << ", e=" << e << ", degree " << dim() << ")";
        return os.str();
    }
};

class FElt {
    FieldPtr F_;
    QpVec c_;

public:
    FElt() = default;
    FElt(FieldPtr F, QpVec c) : F_(std::move(F)), c_(std::move(c)) {}

    const FieldPtr& field() const { return F_; }
    const QpVec& coords() const { return c_; }
    QpVec& coords_mut() { return c_; }
    const Qp& coord(int i, int j) const { return c_[j * F_->f + i]; }

    bool is_zero() const {
        for (auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }

    // min over coordinates of known-precision bounds (for zero tests)
    long zero_prec_num() const {  // numerator over denominator e of the O(...) bound
        long best = PREC_INF * 2;
        for (size_t k = 0; k < c_.size(); ++k) {
            long j = (long)(k / F_->f);
            long b = (c_[k].is_zero() ? c_[k].val() : c_[k].abs_prec()) * F_->e + j;
            best = std::min(best, b);
        }
        return best;
    }

    // exact valuation if determined at current precision
    std::optional<Vq> val_exact() const {
        bool have = false;
        Vq vmin(0);
        long bound_num = PREC_INF * 2;
        for (size_t k = 0; k < c_.size(); ++k) {
            long j = (long)(k / F_->f);
            if (c_[k].is_zero()) {
                bound_num = std::min(bound_num, c_[k].val() * F_->e + j);
            } else {
                Vq v(c_[k].val() * F_->e + j, F_->e);
                if (!have || v < vmin) { vmin = v; have = true; }
            }
        }
        if (!have) return std::nullopt;
        if (vmin >= Vq(bound_num, F_->e)) return std::nullopt;
        return vmin;
    }

    Vq val_or_throw(const char* who = "val") const {
        auto v = val_exact();
        if (!v) throw precision_error(std::string(who) + ": valuation not determined at precision");
        return *v;
    }

    FElt cap(long abs_scalar_prec) const {
        QpVec c = c_;
        for (auto& x : c) x = x.cap(abs_scalar_prec);
        return FElt(F_, std::move(c));
    }

    friend FElt operator+(const FElt& a, const FElt& b) {
        QpVec c(a.c_.size(), Qp::zero(a.F_->p));
        for (size_t k = 0; k < c.size(); ++k) c[k] = a.c_[k] + b.c_[k];
        return FElt(a.F_, std::move(c));
    }
    friend FElt operator-(const FElt& a, const FElt& b) {
        QpVec c(a.c_.size(), Qp::zero(a.F_->p));
        for (size_t k = 0; k < c.size(); ++k) c[k] = a.c_[k] - b.c_[k];
        return FElt(a.F_, std::move(c));
    }
    FElt operator-() const {
        QpVec c = c_;
        for (auto& x : c) x = -x;
        return FElt(F_, std::move(c));
    }

    // U-level product of coordinate slices, reduced mod h
    static void umul_acc(const PadicField& F, const Qp* a, const Qp* b, QpVec& acc, const Qp& sign) {
        int f = F.f;
        QpVec conv(2 * f - 1, Qp::zero(F.p));
        for (int i = 0; i < f; ++i) {
            if (a[i].is_exact_zero()) continue;
            for (int j = 0; j < f; ++j) conv[i + j] = conv[i + j] + a[i] * b[j];
        }
        for (int k = 2 * f - 2; k >= f; --k) {
            Qp t = conv[k];
            if (t.is_exact_zero()) continue;
            for (int i = 0; i < f; ++i) {
                if (!F.hbar[i]) continue;
                conv[k - f + i] = conv[k - f + i] - t * Qp::from_int(F.p, F.hbar[i], PREC_INF);
            }
        }
        for (int i = 0; i < f; ++i) acc[i] = acc[i] + sign * conv[i];
    }

    friend FElt operator*(const FElt& a, const FElt& b) {
        const PadicField& F = *a.F_;
        int e = F.e, f = F.f;
        Qp one = Qp::from_int(F.p, 1, PREC_INF);
        std::vector<QpVec> conv(2 * e - 1, QpVec(f, Qp::zero(F.p)));
        for (int j1 = 0; j1 < e; ++j1)
            for (int j2 = 0; j2 < e; ++j2)
                umul_acc(F, &a.c_[j1 * f], &b.c_[j2 * f], conv[j1 + j2], one);
        Qp neg_one = -one;
        for (int k = 2 * e - 2; k >= e; --k) {
            QpVec t = std::move(conv[k]);
            conv[k] = QpVec(f, Qp::zero(F.p));
            for (int j = 0; j < e; ++j) {
                bool nz = false;
                for (auto& x : F.eis[j])
                    if (!x.is_exact_zero()) { nz = true; break; }
                if (!nz) continue;
                umul_acc(F, t.data(), F.eis[j].data(), conv[k - e + j], neg_one);
            }
        }
        QpVec c(e * f, Qp::zero(F.p));
        for (int j = 0; j < e; ++j)
            for (int i = 0; i < f; ++i) c[j * f + i] = conv[j][i];
        return FElt(a.F_, std::move(c));
    }

    FElt pow(Int n) const;
    FElt inverse() const;
    friend FElt operator/(const FElt& a, const FElt& b) { return a * b.inverse(); }

    // multiply by an exact p-power
    FElt pshift(long k) const {
        QpVec c = c_;
        for (auto& x : c) x = x.shift(k);
        return FElt(F_, std::move(c));
    }

    PadicField::Fq residue() const {
        PadicField::Fq r(F_->f, 0);
        auto v = val_exact();
        if (v && *v < Vq(0)) throw std::domain_error("residue: negative valuation");
        for (int i = 0; i < F_->f; ++i) {
            const Qp& x = c_[i];
            if (x.is_zero()) continue;
            if (x.val() == 0) r[i] = x.residue();
        }
        return r;
    }

    FElt teichmuller() const;

    std::vector<Int> lex_key(long digits) const {
        std::vector<Int> k;
        k.reserve(c_.size());
        for (auto& x : c_) k.push_back(x.is_zero() ? Int(0) : x.lift(std::min(digits, x.abs_prec())));
        return k;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (size_t k = 0; k < c_.size(); ++k) os << (k ? ", " : "") << c_[k].str();
        os << "]";
        return os.str();
    }
};

inline FElt PadicField::elt(QpVec coords) const {
    return FElt(shared_from_this(), std::move(coords));
}
inline FElt PadicField::zero() const { return elt(QpVec(dim(), Qp::zero(p))); }
inline FElt PadicField::one() const {
    QpVec c(dim(), Qp::zero(p));
    c[0] = Qp::from_int(p, 1, prec);
    return elt(std::move(c));
}
inline FElt PadicField::from_int(const Int& n) const {
    QpVec c(dim(), Qp::zero(p));
    c[0] = Qp::from_int(p, n, prec);
    return elt(std::move(c));
}
inline FElt PadicField::from_rational(const Rat& q) const {
    QpVec c(dim(), Qp::zero(p));
    c[0] = Qp::from_rational(p, q, prec);
    return elt(std::move(c));
}
inline FElt PadicField::gen_w() const {
    QpVec c(dim(), Qp::zero(p));
    c[f > 1 ? 1 : 0] = Qp::from_int(p, 1, prec);
    return elt(std::move(c));
}
inline FElt PadicField::gen_pi() const {
    QpVec c(dim(), Qp::zero(p));
    if (e > 1)
        c[f] = Qp::from_int(p, 1, prec);
    else
        c[0] = Qp::from_int(p, p, prec);
    return elt(std::move(c));
}
inline FElt PadicField::fq_lift(const Fq& a) const {
    QpVec c(dim(), Qp::zero(p));
    for (int i = 0; i < f; ++i) c[i] = Qp::from_int(p, a[i], prec);
    return elt(std::move(c));
}

inline FElt FElt::pow(Int n) const {
    const PadicField& F = *F_;
    if (n == 0) return F.one();
    FElt base = n < 0 ? inverse() : *this;
    if (n < 0) n = -n;
    FElt r = F.one();
    while (n != 0) {
        if (n % 2 != 0) r = r * base;
        base = base * base;
        n /= 2;
    }
    return r;
}

inline FElt FElt::inverse() const {
    const PadicField& F = *F_;
    Vq v = val_or_throw("inverse");
    long k = (long)(v.numerator() * (F.e / v.denominator()));  // val = k / e
    // reduce to a unit: x * pi^{-k}
    FElt u = *this;
    if (k != 0) {
        long pe = k / F.e;       // whole p-powers
        long re = k % F.e;
        if (re < 0) { re += F.e; pe -= 1; }
        u = u.pshift(-pe);
        for (long t = 0; t < re; ++t) u = u * F.elt(F.inv_pi_coords);
    }
    // Newton from the residue inverse
    FElt y = F.fq_lift(F.fq_inv(u.residue()));
    FElt two = F.from_int(2);
    long need = F.prec + 2;
    long got = 1;
    while (got < need) {
        y = y * (two - u * y);
        got *= 2;
    }
    // scale back: x^{-1} = u^{-1} * pi^{-k}
    FElt r = y;
    if (k != 0) {
        long pe = k / F.e;
        long re = k % F.e;
        if (re < 0) { re += F.e; pe -= 1; }
        r = r.pshift(-pe);
        for (long t = 0; t < re; ++t) r = r * F.elt(F.inv_pi_coords);
    }
    return r;
}

inline FElt FElt::teichmuller() const {
    const PadicField& F = *F_;
    Int q = ppow(F.p, F.f);
    FElt z = *this;
    for (long it = 0; it < F.prec + 4; ++it) {
        FElt nz = z.pow(q);
        if ((nz - z).is_zero()) return nz;
        z = nz;
    }
    return z;
}

inline void PadicField::finalize() {
    // pi^e = -sum eis[j] pi^j; u0 = pi^e / p; pi^{-1} = pi^{e-1} / (p * u0)
    QpVec pc(dim(), Qp::zero(p));
    for (int j = 0; j < e; ++j)
        for (int i = 0; i < f; ++i) pc[j * f + i] = -eis[j][i];
    FElt pie = elt(std::move(pc));
    FElt u0 = pie.pshift(-1);
    u0_coords = u0.coords();
    if (e == 1) {
        QpVec c(dim(), Qp::zero(p));
        c[0] = Qp::from_rational(p, Rat(Int(1), Int(p)), prec);
        inv_pi_coords = c;
    } else {
        FElt pim1 = gen_pi().pow(e - 1);
        FElt inv = pim1 * u0.inverse();
        inv_pi_coords = inv.pshift(-1).coords();
    }
    // Frobenius lift on the unramified part: root of h with residue w̄^p
    if (f > 1) {
        Fq wb(f, 0);
        wb[1] = 1;
        Fq target = fq_pow(wb, Int(p));
        FElt x = fq_lift(target);
        // Newton for h(x) = 0 (h' is a unit mod p since h is separable)
        std::vector<FElt> h(f + 1, zero()), dh;
        for (int i = 0; i < f; ++i) h[i] = from_int(hbar[i]);
        h[f] = one();
        for (int i = 1; i <= f; ++i) dh.push_back(from_int(i) * h[i]);
        for (long it = 0; it < prec + 4; ++it) {
            FElt hx = zero(), dhx = zero(), xp = one();
            for (int i = 0; i <= f; ++i) {
                hx = hx + h[i] * xp;
                if (i < f) dhx = dhx + dh[i] * xp;
                xp = xp * x;
            }
            if (hx.is_zero()) break;
            x = x - hx * dhx.inverse();
        }
        frob_w_coords = x.coords();
    } else {
        frob_w_coords = one().coords();
    }
}

inline FieldPtr PadicField::make_qp(uint64_t p, long prec) {
    auto F = std::make_shared<PadicField>();
    F->p = p;
    F->f = 1;
    F->e = 1;
    F->prec = prec;
    F->hbar = {0};  // h(x) = x (w = 0 unused placeholder at f = 1; gen_w() returns 1)
    F->eis = {QpVec{Qp::from_int(p, -(long)p, PREC_INF)}};  // E(y) = y - p
    F->provenance.push_back("base Q_" + std::to_string(p));
    F->finalize();
    return F;
}

inline bool lex_less(const FElt& a, const FElt& b, long digits) {
    auto ka = a.lex_key(digits), kb = b.lex_key(digits);
    return ka < kb;
}

// evaluate a polynomial given by coefficient list (degree ascending)
inline FElt poly_eval(const std::vector<FElt>& cs, const FElt& x) {
    const PadicField& F = *x.field();
    FElt r = F.zero();
    for (size_t i = cs.size(); i-- > 0;) r = r * x + cs[i];
    return r;
}

inline std::vector<FElt> poly_derivative(const std::vector<FElt>& cs) {
    std::vector<FElt> d;
    for (size_t i = 1; i < cs.size(); ++i) d.push_back(cs[i].field()->from_int((long)i) * cs[i]);
    if (d.empty() && !cs.empty()) d.push_back(cs[0].field()->zero());
    return d;
}

}  // namespace periods
