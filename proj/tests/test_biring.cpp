#include <doctest.h>

#include "divcalc/biring.hpp"
#include "oracles.hpp"

using namespace divcalc;

namespace {

const AlgebraDesc& R = make_algebra(AlgebraTag::real);
const AlgebraDesc& C = make_algebra(AlgebraTag::complex);
const AlgebraDesc& H = make_algebra(AlgebraTag::quaternion);

Element q(double w, double x, double y, double z) { return Element(H, {w, x, y, z}); }
Element r(double v) { return Element::scalar(R, v); }

BiMatrix real2(double a, double b, double c, double d) { return BiMatrix(R, {{r(a), r(b)}, {r(c), r(d)}}); }

double cmat_dist(const BiMatrix& a, const oracle::CMat& b) {
    double m = 0;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(oracle::to_c(a(i, j)) - b[i][j]));
    return m;
}

BiMatrix well_conditioned(const AlgebraDesc& alg, size_t n, Rng& rng) {
    for (;;) {
        BiMatrix a = BiMatrix::random(alg, n, n, rng);
        try {
            BiMatrix inv = rc_inv(a);
            if (inv.max_norm() < 20) return a;
        } catch (const Error&) {
        }
    }
}

}  // namespace

TEST_CASE("rc product") {
    Rng rng(20);
    BiMatrix a = BiMatrix::random(H, 3, 2, rng);
    CHECK(max_dist(rc_mul(BiMatrix::identity(H, 3), a), a) == 0.0);
    BiMatrix x = BiMatrix::random(R, 3, 3, rng), y = BiMatrix::random(R, 3, 3, rng);
    BiMatrix p = rc_mul(x, y);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            double s = 0;
            for (size_t k = 0; k < 3; ++k) s += x(i, k)[0] * y(k, j)[0];
            CHECK(p(i, j)[0] == doctest::Approx(s));
        }
    Element f = q(0.5, 1, -2, 0.25), z(H);
    BiMatrix off(H, {{z, f}, {f, z}});
    BiMatrix sq = rc_mul(off, off);
    CHECK(max_dist(sq, BiMatrix(H, {{mul(f, f), z}, {z, mul(f, f)}})) <= 1e-15);
    CHECK_THROWS_AS(rc_mul(a, a), Error);
}

TEST_CASE("cr product and duality") {
    Rng rng(21);
    BiMatrix a = BiMatrix::random(H, 3, 3, rng);
    BiMatrix E = BiMatrix::identity(H, 3);
    CHECK(max_dist(cr_mul(E, a), a) == 0.0);
    CHECK(max_dist(cr_mul(a, E), a) == 0.0);
    for (int t = 0; t < 100; ++t) {
        size_t n = 2 + t % 2, m = 2 + (t / 2) % 2, k = 2 + (t / 4) % 2;
        BiMatrix x = BiMatrix::random(H, n, m, rng), y = BiMatrix::random(H, m, k, rng);
        CHECK(max_dist(transpose(rc_mul(x, y)), cr_mul(transpose(x), transpose(y))) <= 1e-10);
        BiMatrix u = BiMatrix::random(H, k, n, rng), v = BiMatrix::random(H, m, k, rng);
        CHECK(max_dist(transpose(cr_mul(u, v)), rc_mul(transpose(u), transpose(v))) <= 1e-10);
    }
    BiMatrix x = BiMatrix::random(R, 3, 3, rng), y = BiMatrix::random(R, 3, 3, rng);
    CHECK(max_dist(cr_mul(x, y), transpose(rc_mul(transpose(x), transpose(y)))) <= 1e-14);
    // associativity of cr
    BiMatrix b = BiMatrix::random(H, 3, 3, rng), c = BiMatrix::random(H, 3, 3, rng);
    CHECK(max_dist(cr_mul(cr_mul(a, b), c), cr_mul(a, cr_mul(b, c))) <= 1e-12);
}

TEST_CASE("hadamard inverse") {
    BiMatrix h = hadamard_inv(real2(1, 2, 3, 4));
    CHECK(max_dist(h, real2(1, 1.0 / 3, 0.5, 0.25)) <= 1e-15);
    Rng rng(22);
    BiMatrix a = BiMatrix::random(H, 2, 3, rng);
    CHECK(max_dist(hadamard_inv(hadamard_inv(a)), a) <= 1e-14);
    try {
        hadamard_inv(BiMatrix::identity(H, 2));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::hadamard_undefined);
    }
    BiMatrix one(H, {{Element::one(H)}});
    CHECK(max_dist(hadamard_inv(one), one) == 0.0);
}

TEST_CASE("powers") {
    Rng rng(23);
    BiMatrix a = BiMatrix::random(H, 3, 3, rng);
    CHECK(max_dist(rc_pow(a, 1), a) == 0.0);
    CHECK(max_dist(rc_pow(a, 0), BiMatrix::identity(H, 3)) == 0.0);
    BiMatrix hyp = real2(0, 1, 1, 0);
    CHECK(max_dist(rc_pow(hyp, 2), BiMatrix::identity(R, 2)) == 0.0);
    for (int n = 0; n <= 5; ++n) {
        CHECK(max_dist(transpose(rc_pow(a, n)), cr_pow(transpose(a), n)) <= 1e-10);
        CHECK(max_dist(transpose(cr_pow(a, n)), rc_pow(transpose(a), n)) <= 1e-10);
    }
    CHECK_THROWS_AS(rc_pow(BiMatrix::random(H, 2, 3, rng), 2), Error);
}

TEST_CASE("quasideterminants") {
    CHECK(dist(quasidet_rc(real2(1, 2, 3, 4), 0, 0), r(-0.5)) <= 1e-15);
    Rng rng(24);
    for (int t = 0; t < 100; ++t) {
        BiMatrix a = well_conditioned(H, 2, rng);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) {
                Element f = quasidet_2x2_formula(a, i, j);
                CHECK(dist(quasidet_rc(a, i, j), f) <= 1e-10 * (1 + norm(f)));
            }
    }
    for (size_t n : {2, 3})
        for (int t = 0; t < 30; ++t) {
            BiMatrix a = well_conditioned(H, n, rng);
            BiMatrix at = transpose(a), ai = rc_inv(a);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    Element v = quasidet_rc(a, i, j);
                    CHECK(dist(quasidet_cr(at, j, i), v) <= 1e-10 * (1 + norm(v)));
                    // quasideterminant (i,j) is the inverse of inverse entry (j,i)
                    CHECK(dist(divcalc::inv(ai(j, i)), v) <= 1e-9 * (1 + norm(v)));
                }
        }
    CHECK(dist(quasidet_rc(BiMatrix(H, {{q(1, 2, 3, 4)}}), 0, 0), q(1, 2, 3, 4)) == 0.0);
    try {
        quasidet_rc(real2(1, 0, 0, 0), 0, 0);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::quasidet_undefined);
    }
}

TEST_CASE("rc inverse") {
    CHECK(max_dist(rc_inv(real2(1, 2, 3, 4)), real2(-2, 1, 1.5, -0.5)) <= 1e-14);
    CHECK(max_dist(inverse_2x2_formula(real2(1, 2, 3, 4)), real2(-2, 1, 1.5, -0.5)) <= 1e-14);
    CHECK(max_dist(rc_inv(BiMatrix::identity(H, 4)), BiMatrix::identity(H, 4)) == 0.0);
    // zero entries in the inverse: inner minors are singular
    BiMatrix swap = real2(0, 1, 1, 0);
    CHECK(max_dist(rc_inv(swap), swap) == 0.0);
    const Element i = q(0, 1, 0, 0), j = q(0, 0, 1, 0), k = q(0, 0, 0, 1), z(H);
    BiMatrix perm(H, {{z, i, z}, {z, z, j}, {k, z, z}});
    CHECK(max_dist(rc_mul(perm, rc_inv(perm)), BiMatrix::identity(H, 3)) <= 1e-15);
    try {
        rc_inv(real2(1, 2, 2, 4));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::rc_singular);
    }

    Rng rng(25);
    for (size_t n : {2, 3, 4})
        for (int t = 0; t < 20; ++t) {
            BiMatrix a = well_conditioned(H, n, rng);
            BiMatrix inv = rc_inv(a);
            CHECK(max_dist(rc_mul(a, inv), BiMatrix::identity(H, n)) <= 1e-10);
            CHECK(max_dist(rc_mul(inv, a), BiMatrix::identity(H, n)) <= 1e-10);
            // scalar rule for central m
            CHECK(max_dist(rc_inv(scale(a, 2.5)), scale(inv, 1 / 2.5)) <= 1e-10);
            // duality and cr inverse
            BiMatrix ci = cr_inv(transpose(a));
            CHECK(max_dist(transpose(inv), ci) <= 1e-12);
            CHECK(max_dist(cr_mul(transpose(a), ci), BiMatrix::identity(H, n)) <= 1e-10);
            // cancellation: b a = c a implies b = c
            BiMatrix b = BiMatrix::random(H, 2, n, rng);
            BiMatrix ba = rc_mul(b, a);
            CHECK(max_dist(rc_mul(ba, inv), b) <= 1e-10);
        }
    // classical oracle over R and C
    for (const AlgebraDesc* alg : {&R, &C})
        for (int t = 0; t < 50; ++t) {
            BiMatrix a = well_conditioned(*alg, 2 + t % 3, rng);
            CHECK(cmat_dist(rc_inv(a), oracle::inverse(oracle::to_cmat(a))) <= 1e-9);
        }
}

TEST_CASE("linear systems") {
    Rng rng(26);
    std::vector<Element> b = {random_element(H, rng), random_element(H, rng)};
    auto x = solve_rc(BiMatrix::identity(H, 2), b);
    CHECK(dist(x[0], b[0]) == 0.0);
    CHECK(dist(x[1], b[1]) == 0.0);
    const Element i = q(0, 1, 0, 0), j = q(0, 0, 1, 0), k = q(0, 0, 0, 1), z(H);
    auto y = solve_rc(BiMatrix(H, {{i, z}, {z, j}}), {k, Element::one(H)});
    CHECK(dist(y[0], j) <= 1e-15);
    CHECK(dist(y[1], neg(j)) <= 1e-15);
    for (const AlgebraDesc* alg : {&R, &C})
        for (int t = 0; t < 50; ++t) {
            BiMatrix a = well_conditioned(*alg, 3, rng);
            std::vector<Element> rhs;
            std::vector<oracle::cd> crhs;
            for (int s = 0; s < 3; ++s) {
                rhs.push_back(random_element(*alg, rng));
                crhs.push_back(oracle::to_c(rhs.back()));
            }
            auto got = solve_rc(a, rhs);
            auto want = oracle::solve(oracle::to_cmat(a), crhs);
            for (int s = 0; s < 3; ++s) CHECK(std::abs(oracle::to_c(got[s]) - want[s]) <= 1e-9);
        }
    CHECK_THROWS_AS(solve_rc(real2(1, 2, 2, 4), {r(1), r(1)}), Error);
}

TEST_CASE("rank") {
    CHECK(rc_rank(BiMatrix::identity(H, 3)).rank == 3);
    CHECK(rc_rank(real2(1, 2, 2, 4)).rank == 1);
    CHECK(rc_rank(BiMatrix(H, 2, 3)).rank == 0);
    const Element i = q(0, 1, 0, 0), j = q(0, 0, 1, 0), k = q(0, 0, 0, 1);
    BiMatrix a(H, {{i, i}, {j, j}});
    RankResult rr = rc_rank(a);
    CHECK(rr.rank == 1);
    CHECK(rr.major.rows == std::vector<size_t>{0});
    CHECK(rr.major.cols == std::vector<size_t>{0});
    REQUIRE(rr.dependencies.size() == 1);
    CHECK(dist(rr.dependencies[0][0], k) <= 1e-15);
    CHECK(dist(rr.dependencies[0][1], Element::scalar(H, -1)) == 0.0);
    CHECK(rc_mul(BiMatrix::row(rr.dependencies[0]), a).max_norm() <= 1e-15);

    Rng rng(27);
    for (int t = 0; t < 50; ++t) {
        size_t want = 1 + t % 2;
        BiMatrix m = rc_mul(BiMatrix::random(H, 3, want, rng), BiMatrix::random(H, want, 3, rng));
        RankResult res = rc_rank(m);
        CHECK(res.rank == want);
        CHECK(res.max_border_quasidet <= 1e-8);
        for (const auto& lam : res.dependencies) CHECK(rc_mul(BiMatrix::row(lam), m).max_norm() <= 1e-8);
    }
    // right multiples of one row are not left-dependent
    const Element w1 = q(1, 2, 0, 0), w2 = q(0, 1, 1, 0);
    BiMatrix rightdep(H, {{w1, w2}, {mul(w1, j), mul(w2, j)}});
    CHECK(rc_rank(rightdep).rank == 2);

    for (const AlgebraDesc* alg : {&R, &C})
        for (int t = 0; t < 50; ++t) {
            size_t rows = 2 + t % 3, cols = 2 + (t / 3) % 3, inner = 1 + t % 3;
            BiMatrix m = t % 2 ? BiMatrix::random(*alg, rows, cols, rng)
                               : rc_mul(BiMatrix::random(*alg, rows, inner, rng),
                                        BiMatrix::random(*alg, inner, cols, rng));
            CHECK(rc_rank(m).rank == oracle::rank(oracle::to_cmat(m)));
            CHECK(rc_rank(transpose(m)).rank == rc_rank(m).rank);
        }
}

TEST_CASE("eigen utilities") {
    const Element f = q(0.3, 1, -0.5, 2), z(H), one = Element::one(H);
    BiMatrix off(H, {{z, f}, {f, z}});
    Report rep = verify_eigen_rc(off, f, {one, one});
    CHECK(rep.verdict);
    CHECK(rep.residual <= 1e-15);
    CHECK(verify_eigen_rc(BiMatrix::identity(H, 2), one, {f, q(1, 2, 3, 4)}).verdict);
    const Element i = q(0, 1, 0, 0);
    BiMatrix rot(H, {{z, one}, {neg(one), z}});
    Report r2 = verify_eigen_rc(rot, i, {one, i});
    CHECK(r2.verdict);
    CHECK(r2.residual <= 1e-15);
    CHECK_FALSE(verify_eigen_rc(rot, one, {one, i}).verdict);

    auto b1 = eigen_offdiag(one);
    CHECK(dist(b1[0], one) == 0.0);
    CHECK(dist(b1[1], neg(one)) == 0.0);
    auto bi = eigen_offdiag(i);
    CHECK(dist(bi[1], neg(i)) == 0.0);
    const Element g = q(1, 0, 1, 0);
    BiMatrix offg(H, {{z, g}, {g, z}});
    for (const auto& b : eigen_offdiag(g)) {
        BiMatrix shifted = sub(offg, left_scale(b, BiMatrix::identity(H, 2)));
        CHECK(rc_singular(shifted));
        CHECK(rc_rank(shifted).rank == 1);
        CHECK(rc_rank(shifted).max_border_quasidet <= 1e-12);
    }
    CHECK_FALSE(rc_singular(sub(offg, left_scale(i, BiMatrix::identity(H, 2)))));
    CHECK_THROWS_AS(eigen_offdiag(z), Error);

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Element b = elliptic_eigen_sample(seed);
        CHECK(b[0] == 0.0);
        CHECK(dist(mul(b, b), Element::scalar(H, -1)) <= 1e-12);
        CHECK(dist(elliptic_eigen_sample(seed), b) == 0.0);
    }
    const double s = 1 / std::sqrt(3.0);
    CHECK(dist(mul(q(0, s, s, s), q(0, s, s, s)), Element::scalar(H, -1)) <= 1e-15);
}

TEST_CASE("matrix data form") {
    Rng rng(28);
    BiMatrix a = BiMatrix::random(H, 2, 3, rng);
    CHECK(max_dist(bimatrix_from_json(nlohmann::json::parse(to_json(a).dump())), a) == 0.0);
    auto j = nlohmann::json::parse(R"({"algebra": "real", "entries": [[1, 2], [3, 4]]})");
    CHECK(max_dist(bimatrix_from_json(j), real2(1, 2, 3, 4)) == 0.0);
    CHECK_THROWS_AS(bimatrix_from_json(nlohmann::json::parse(R"({"algebra": "real", "entries": [[1, 2], [3]]})")),
                    Error);
}
