#include "periods/qp.hpp"
#include "periods/wittpoly.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace periods;

TEST_CASE("Qp basic arithmetic and precision") {
    Qp a = Qp::from_int(5, 7, 10);
    Qp b = Qp::from_int(5, 50, 10);
    REQUIRE(a.val() == 0);
    REQUIRE(b.val() == 2);
    REQUIRE((a + b).val() == 0);
    REQUIRE((a * b).val() == 2);
    REQUIRE((a * b).abs_prec() == 10);  // b carries 8 relative digits

    Qp z = a - a;
    REQUIRE(z.is_zero());
    REQUIRE(z.val() == 10);

    Qp inv = a.inverse();
    REQUIRE(same(a * inv, Qp::from_int(5, 1, 10)));
}

TEST_CASE("Qp valuation addition and ultrametric") {
    Qp x = Qp::from_int(3, 6, 12);   // val 1
    Qp y = Qp::from_int(3, 12, 12);  // val 1
    REQUIRE((x * y).val() == 2);
    REQUIRE((x + y).val() == 2);     // 6+12 = 18 = 2*9
    Qp w = Qp::from_int(3, 2, 12);
    REQUIRE((x + w).val() == 0);     // distinct valuations: min
}

TEST_CASE("Qp rationals") {
    Qp t = Qp::from_rational(5, Rat(Int(1), Int(3)), 8);
    Qp three = Qp::from_int(5, 3, 8);
    REQUIRE(same(t * three, Qp::from_int(5, 1, 8)));
    Qp half_p = Qp::from_rational(5, Rat(Int(1), Int(5)), 8);
    REQUIRE(half_p.val() == -1);
}

TEST_CASE("Witt structure polynomials match ghost arithmetic") {
    // brute-force ghost oracle over exact integers
    auto ghost = [](uint64_t p, const std::vector<Int>& w, int i) {
        Int g = 0;
        for (int j = 0; j <= i; ++j) {
            Int t = w[j];
            long e = 1;
            for (int k = 0; k < i - j; ++k) e *= (long)p;
            Int pw = 1;
            for (long k = 0; k < e; ++k) pw *= t;
            g += ppow(p, j) * pw;
        }
        return g;
    };
    struct ZRing {
        Int from_int(Int c) const { return c; }
        Int mul(const Int& a, const Int& b) const { return a * b; }
        Int add(const Int& a, const Int& b) const { return a + b; }
    } R;
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        auto W = WittPolys::get(p, 3);
        std::vector<Int> x = {3, 1, 4}, y = {2, 7, 1};
        std::vector<Int> vars = {x[0], x[1], x[2], y[0], y[1], y[2]};
        std::vector<Int> s, m;
        for (int i = 0; i < 3; ++i) {
            s.push_back(W->sum(i).eval(vars, R));
            m.push_back(W->prod(i).eval(vars, R));
        }
        for (int i = 0; i < 3; ++i) {
            REQUIRE(ghost(p, s, i) == ghost(p, x, i) + ghost(p, y, i));
            REQUIRE(ghost(p, m, i) == ghost(p, x, i) * ghost(p, y, i));
        }
    }
}
