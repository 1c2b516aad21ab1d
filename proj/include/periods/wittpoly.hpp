#pragma once

#include "periods/qp.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace periods {

// Sparse multivariate polynomial over Z, exponent vectors of fixed width.
struct MPoly {
    int nvars = 0;
    std::map<std::vector<int32_t>, Int> terms;

    static MPoly zero(int n) { return MPoly{n, {}}; }
    static MPoly constant(int n, Int c) {
        MPoly f{n, {}};
        if (c != 0) f.terms[std::vector<int32_t>(n, 0)] = std::move(c);
        return f;
    }
    static MPoly var(int n, int i, int exp = 1) {
        MPoly f{n, {}};
        std::vector<int32_t> e(n, 0);
        e[i] = exp;
        f.terms[e] = 1;
        return f;
    }

    void add_term(const std::vector<int32_t>& e, const Int& c) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (c != 0) terms[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (auto& [e, c] : b.terms) r.add_term(e, -c);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r{a.nvars, {}};
        for (auto& [ea, ca] : a.terms)
            for (auto& [eb, cb] : b.terms) {
                std::vector<int32_t> e(a.nvars);
                for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MPoly pow(long k) const {
        MPoly r = constant(nvars, 1), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }
    MPoly divexact(const Int& d) const {
        MPoly r{nvars, {}};
        for (auto& [e, c] : terms) {
            if (c % d != 0) throw std::logic_error("MPoly: inexact division");
            r.terms[e] = c / d;
        }
        return r;
    }

    // Evaluate over a commutative ring: Ring provides from_int(Int), mul, add.
    // Variable powers are cached per variable.
    template <class T, class Ring>
    T eval(const std::vector<T>& vars, const Ring& R) const {
        std::vector<std::map<int32_t, T>> cache(nvars);
        auto pw = [&](auto&& self, int i, int32_t e) -> const T& {
            auto it = cache[i].find(e);
            if (it != cache[i].end()) return it->second;
            T v = [&]() -> T {
                if (e == 1) return vars[i];
                const T& h = self(self, i, e / 2);
                T sq = R.mul(h, h);
                if (e & 1) sq = R.mul(sq, vars[i]);
                return sq;
            }();
            return cache[i].emplace(e, std::move(v)).first->second;
        };
        T acc = R.from_int(Int(0));
        for (auto& [e, c] : terms) {
            T t = R.from_int(c);
            for (int i = 0; i < nvars; ++i)
                if (e[i]) t = R.mul(t, pw(pw, i, e[i]));
            acc = R.add(acc, t);
        }
        return acc;
    }
};

// Universal truncated-Witt-vector structure polynomials for a fixed prime,
// solved once from the ghost identities and cached.
//
// Variables: X_j = var j, Y_j = var m + j  (2m variables).
class WittPolys {
    uint64_t p_;
    int m_;
    std::vector<MPoly> sum_, prod_, neg_;

    MPoly ghost(int i, bool ys) const {
        int n = 2 * m_;
        MPoly g = MPoly::zero(n);
        for (int j = 0; j <= i; ++j)
            g = g + MPoly::constant(n, ppow(p_, j)) * MPoly::var(n, (ys ? m_ : 0) + j).pow(ppow_l(i - j));
        return g;
    }
    long ppow_l(int e) const {
        long r = 1;
        while (e--) r *= (long)p_;
        return r;
    }
    // ghost polynomial applied to the already-solved coordinate polys; the
    // unknown top term p^i W_i is exactly what is left out
    MPoly ghost_of(int i, const std::vector<MPoly>& w) const {
        MPoly g = MPoly::zero(2 * m_);
        for (int j = 0; j <= i && j < (int)w.size(); ++j)
            g = g + MPoly::constant(2 * m_, ppow(p_, j)) * w[j].pow(ppow_l(i - j));
        return g;
    }

public:
    WittPolys(uint64_t p, int m) : p_(p), m_(m) {
        int n = 2 * m;
        for (int i = 0; i < m; ++i) {
            MPoly target_s = ghost(i, false) + ghost(i, true);
            MPoly target_m = ghost(i, false) * ghost(i, true);
            MPoly target_n = MPoly::zero(n) - ghost(i, false);
            sum_.push_back((target_s - ghost_of(i, sum_)).divexact(ppow(p_, i)));
            prod_.push_back((target_m - ghost_of(i, prod_)).divexact(ppow(p_, i)));
            neg_.push_back((target_n - ghost_of(i, neg_)).divexact(ppow(p_, i)));
        }
    }

    uint64_t prime() const { return p_; }
    int length() const { return m_; }
    const MPoly& sum(int i) const { return sum_[i]; }
    const MPoly& prod(int i) const { return prod_[i]; }
    const MPoly& neg(int i) const { return neg_[i]; }

    static std::shared_ptr<const WittPolys> get(uint64_t p, int m) {
        static std::mutex mx;
        static std::map<std::pair<uint64_t, int>, std::shared_ptr<const WittPolys>> cache;
        std::lock_guard lk(mx);
        auto key = std::make_pair(p, m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto v = std::make_shared<const WittPolys>(p, m);
        cache[key] = v;
        return v;
    }
};

}  // namespace periods
