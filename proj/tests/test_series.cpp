#include <doctest.h>

#include <numbers>

#include "divcalc/series.hpp"
#include "oracles.hpp"

using namespace divcalc;

namespace {

const AlgebraDesc& R = make_algebra(AlgebraTag::real);
const AlgebraDesc& H = make_algebra(AlgebraTag::quaternion);

Element q(double w, double x, double y, double z) { return Element(H, {w, x, y, z}); }

// sum over degrees N <= maxN of (1/N!) * words with cs placed in every order-free way
Element quasiexp_bruteforce(const std::vector<Element>& cs, const Element& x, int maxN) {
    const int n = static_cast<int>(cs.size());
    Element sum(H);
    double fact = 1;
    for (int N = 1; N <= maxN; ++N) {
        fact *= N;
        if (N < n) continue;
        for (const auto& labels : oracle::placements(n, N)) {
            Element w = Element::one(H);
            for (int l : labels) w = mul(w, l == 0 ? x : cs[l - 1]);
            sum += scale(w, 1.0 / fact);
        }
    }
    return sum;
}

}  // namespace

TEST_CASE("exponent basics") {
    CHECK(dist(exp_el(Element(H)), Element::one(H)) == 0.0);
    Element e = exp_el(q(0, std::numbers::pi / 2, 0, 0));
    CHECK(dist(e, q(0, 1, 0, 0)) <= 1e-14);
    CHECK(dist(exp_at(q(0, 1, 0, 0), std::numbers::pi), Element::scalar(H, -1)) <= 1e-14);
    CHECK(dist(exp_at(q(1, 2, 3, 4), 0), Element::one(H)) == 0.0);
    try {
        exp_el(Element::scalar(R, 60.0));
        FAIL("expected throw");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::series_budget);
        CHECK(std::string(err.what()) == "series budget exceeded");
    }
    SeriesParams loose{1e-6, 64};
    CHECK(dist(exp_el(Element::scalar(R, 1.0), loose), Element::scalar(R, std::exp(1.0))) <= 1e-5);
}

TEST_CASE("series agree with complex functions on the {1, i} subalgebra") {
    Rng rng(30);
    std::uniform_real_distribution<double> u(-4, 4);
    using F = Element (*)(const Element&, const SeriesParams&);
    for (int t = 0; t < 100; ++t) {
        oracle::cd z(u(rng), u(rng));
        if (std::abs(z) > 4) continue;
        Element x = q(z.real(), z.imag(), 0, 0);
        struct Case {
            F f;
            oracle::cd want;
        } cases[] = {{exp_el, std::exp(z)},   {sinh_el, std::sinh(z)}, {cosh_el, std::cosh(z)},
                     {sin_el, std::sin(z)},   {cos_el, std::cos(z)}};
        for (const auto& c : cases) {
            Element got = c.f(x, {});
            CHECK(std::abs(oracle::cd(got[0], got[1]) - c.want) <= 1e-12 * (1 + std::abs(c.want)));
            CHECK(got[2] == 0.0);
            CHECK(got[3] == 0.0);
        }
    }
}

TEST_CASE("exponent of a sum") {
    Rng rng(31);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 50; ++t) {
        Element a = random_element(H, rng);
        Element b = add(Element::scalar(H, u(rng)), scale(a, u(rng)));
        CHECK(dist(exp_el(add(a, b)), mul(exp_el(a), exp_el(b))) <= 1e-10);
    }
    Element i = q(0, 1, 0, 0), j = q(0, 0, 1, 0);
    CHECK(dist(exp_el(add(i, j)), mul(exp_el(i), exp_el(j))) > 1e-3);
}

TEST_CASE("conjugation identities") {
    Rng rng(32);
    for (int t = 0; t < 50; ++t) {
        Element a = random_nonzero(H, rng), x = random_element(H, rng);
        CHECK(dist(mul(a, exp_el(mul(x, a))), mul(exp_el(mul(a, x)), a)) <= 1e-10);
        CHECK(dist(exp_el(mul(x, a)), mul(mul(inv(a), exp_el(mul(a, x))), a)) <= 1e-9);
        double tt = 2 * (t / 50.0) - 1;
        Element e = exp_at(a, tt);
        CHECK(dist(e, exp_el(scale(a, tt))) <= 1e-12);
        CHECK(dist(mul(e, a), mul(a, e)) <= 1e-12);
    }
}

TEST_CASE("exponent satisfies its equation") {
    Rng rng(33);
    const Element one = Element::one(H);
    for (int t = 0; t < 20; ++t) {
        Element x = random_element(H, rng);
        double h = 1e-5 * (1 + norm(x));
        Element fd = scale(sub(exp_el(add(x, scale(one, h))), exp_el(sub(x, scale(one, h)))), 0.5 / h);
        CHECK(dist(fd, exp_el(x)) <= 1e-6);
    }
}

TEST_CASE("quasiexponent") {
    Rng rng(34);
    const Element one = Element::one(H);
    for (int t = 0; t < 20; ++t) {
        Element c = random_element(H, rng), c2 = random_element(H, rng), x = random_element(H, rng);
        CHECK(dist(quasiexp({c}, Element(H)), c) <= 1e-15);
        Element s = Element::scalar(H, c[0]);
        CHECK(dist(quasiexp({s}, x), mul(s, exp_el(x))) <= 1e-12);
        // c commuting with x
        Element cx = add(Element::scalar(H, 0.3), scale(x, -0.7));
        CHECK(dist(quasiexp({cx}, x), mul(cx, exp_el(x))) <= 1e-12);
        // dy/dx o 1 = y
        for (const auto& cs : {std::vector<Element>{c}, std::vector<Element>{c, c2}}) {
            double h = 1e-5 * (1 + norm(x));
            Element fd = scale(sub(quasiexp(cs, add(x, scale(one, h))), quasiexp(cs, sub(x, scale(one, h)))),
                               0.5 / h);
            CHECK(dist(fd, quasiexp(cs, x)) <= 1e-6);
        }
    }
    Element x = random_element(H, rng);
    for (int n = 1; n <= 3; ++n) CHECK(dist(quasiexp(std::vector<Element>(n, one), x), exp_el(x)) <= 1e-12);
    // against direct enumeration of the words
    for (int n = 1; n <= 3; ++n) {
        std::vector<Element> cs;
        for (int m = 0; m < n; ++m) cs.push_back(random_element(H, rng));
        Element small = scale(random_element(H, rng), 0.5);
        CHECK(dist(quasiexp(cs, small), quasiexp_bruteforce(cs, small, 24)) <= 1e-12);
    }
    // second partial along e0 of exp is e[1,1]^x
    double h = 1e-3;
    Element fd2 = scale(add(sub(exp_el(add(x, scale(one, h))), scale(exp_el(x), 2)), exp_el(sub(x, scale(one, h)))),
                        1 / (h * h));
    CHECK(dist(fd2, quasiexp({one, one}, x)) <= 1e-6);
    CHECK_THROWS_AS(quasiexp({}, x), Error);
}

TEST_CASE("quasiexponent of at") {
    Rng rng(35);
    for (int t = 0; t < 20; ++t) {
        Element c = random_element(H, rng), a = random_element(H, rng);
        CHECK(dist(quasiexp_at(c, a, 0.0), c) == 0.0);
        Element cc = add(Element::scalar(H, 1.5), scale(a, 0.5));
        double tt = 0.1 * t - 1;
        CHECK(dist(quasiexp_at(cc, a, tt), mul(cc, exp_at(a, tt))) <= 1e-12);
        double h = 1e-5 * (1 + std::abs(tt));
        Element fd = scale(sub(quasiexp_at(c, a, tt + h), quasiexp_at(c, a, tt - h)), 0.5 / h);
        CHECK(dist(fd, quasiexp_at_dt(c, a, tt)) <= 1e-6);
        if (t == 5) {
            // the series without the (n+1) weights is not the derivative
            Element lit(H), s1 = add(mul(c, a), mul(a, c)), ap = a;
            double coef = 0.5;
            for (int n = 0; n < 40; ++n) {
                lit += scale(s1, coef);
                ap = mul(ap, a);
                s1 = add(mul(s1, a), mul(ap, c));
                coef *= tt / (n + 3);
            }
            CHECK(dist(fd, lit) > 1e-3);
        }
        // equals the n = 1 quasiexponent evaluated at x = a t with c t in the slot
        CHECK(dist(scale(quasiexp_at(c, a, tt), tt), quasiexp({scale(c, tt)}, scale(a, tt))) <= 1e-12);
    }
}

TEST_CASE("hyperbolic and trigonometric maps") {
    CHECK(norm(sinh_el(Element(H))) == 0.0);
    CHECK(dist(cosh_el(Element(H)), Element::one(H)) == 0.0);
    Rng rng(36);
    for (int t = 0; t < 20; ++t) {
        Element f = random_element(H, rng);
        CHECK(dist(sinh_el(f), scale(sub(exp_el(f), exp_el(neg(f))), 0.5)) <= 1e-12);
        CHECK(dist(cosh_el(f), scale(add(exp_el(f), exp_el(neg(f))), 0.5)) <= 1e-12);
        CHECK(norm(commutator(sinh_el(scale(f, 1.3)), f)) <= 1e-12);
        // pure imaginary unit b: e^{bt} = cos t + b sin t
        Element b = elliptic_eigen_sample(100 + t);
        CHECK(dist(exp_at(b, 0.7), add(Element::scalar(H, std::cos(0.7)), scale(b, std::sin(0.7)))) <= 1e-14);
        CHECK(dist(sin_el(scale(b, 0.7)), scale(b, std::sinh(0.7))) <= 1e-14);
    }
}

TEST_CASE("matrix exponentials") {
    BiMatrix z(H, 2, 2);
    CHECK(max_dist(mexp_rc(z), BiMatrix::identity(H, 2)) == 0.0);
    CHECK(max_dist(mexp_cr(z), BiMatrix::identity(H, 2)) == 0.0);
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        BiMatrix a(R, {{Element(R), Element::scalar(R, t)}, {Element::scalar(R, t), Element(R)}});
        BiMatrix want(R, {{Element::scalar(R, std::cosh(t)), Element::scalar(R, std::sinh(t))},
                          {Element::scalar(R, std::sinh(t)), Element::scalar(R, std::cosh(t))}});
        CHECK(max_dist(mexp_rc(a), want) <= 1e-13);
    }
    Rng rng(37);
    for (int t = 0; t < 20; ++t) {
        BiMatrix x = BiMatrix::random(H, 2 + t % 2, 2 + t % 2, rng, 0.5);
        CHECK(max_dist(transpose(mexp_rc(x)), mexp_cr(transpose(x))) <= 1e-12);
        // e^{x} e^{-x} = E under rc for the same x (powers of x commute)
        CHECK(max_dist(rc_mul(mexp_rc(x), mexp_rc(scale(x, -1))), BiMatrix::identity(H, x.rows())) <= 1e-12);
    }
    CHECK_THROWS_AS(mexp_rc(BiMatrix(H, 2, 3)), Error);
}
