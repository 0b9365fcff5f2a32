#include "divcalc/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace divcalc {

namespace {

const AlgebraDesc& H() { return make_algebra(AlgebraTag::quaternion); }

const AlgebraDesc& algebra_or(const ScenarioOptions& o, AlgebraTag fallback) {
    return o.algebra.empty() ? make_algebra(fallback) : make_algebra(o.algebra);
}

Element q(double w, double x, double y, double z) { return Element(H(), {w, x, y, z}); }

// --- biring ---------------------------------------------------------------

ScenarioReport quasidet_2x2(const ScenarioOptions& o) {
    const AlgebraDesc& alg = algebra_or(o, AlgebraTag::quaternion);
    Rng rng(o.seed);
    double qerr = 0, ierr = 0;
    int used = 0, skipped = 0;
    while (used < 200) {
        BiMatrix a = BiMatrix::random(alg, 2, 2, rng);
        bool ok = true;
        for (size_t i = 0; i < 2 && ok; ++i)
            for (size_t j = 0; j < 2 && ok; ++j)
                ok = norm(a(i, j)) > 0.05 && norm(quasidet_2x2_formula(a, i, j)) > 0.05;
        if (!ok) {
            ++skipped;
            continue;
        }
        ++used;
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) {
                Element f = quasidet_2x2_formula(a, i, j);
                qerr = std::max(qerr, dist(quasidet_rc(a, i, j), f) / (1.0 + norm(f)));
            }
        BiMatrix f = inverse_2x2_formula(a);
        ierr = std::max(ierr, max_dist(rc_inv(a), f) / (1.0 + f.max_norm()));
    }
    ScenarioReport r;
    r.metrics = {{"matrices", used}, {"skipped_ill_conditioned", skipped},
                 {"max_quasidet_rel_err", qerr}, {"max_inverse_rel_err", ierr}};
    r.verdict = qerr <= 1e-9 && ierr <= 1e-9;
    r.summary = "recursive quasideterminants and inverse agree with the closed forms";
    return r;
}

ScenarioReport solve_quaternion_system(const ScenarioOptions& o) {
    const Element i = Element::basis(H(), 1), j = Element::basis(H(), 2),
                  k = Element::basis(H(), 3), one = Element::one(H());
    BiMatrix a(H(), {{i, Element(H())}, {Element(H()), j}});
    auto x = solve_rc(a, {k, one});
    double example = std::max(dist(x[0], j), dist(x[1], neg(j)));
    Rng rng(o.seed);
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        BiMatrix m = BiMatrix::random(H(), 3, 3, rng);
        std::vector<Element> b;
        for (int r = 0; r < 3; ++r) b.push_back(random_element(H(), rng));
        try {
            auto y = solve_rc(m, b);
            BiMatrix res = sub(rc_mul(m, BiMatrix::column(y)), BiMatrix::column(b));
            worst = std::max(worst, res.max_norm() / (1.0 + BiMatrix::column(b).max_norm()));
        } catch (const Error&) {
            worst = std::max(worst, 1.0);
        }
    }
    ScenarioReport r;
    r.metrics = {{"example_error", example}, {"max_rel_residual", worst}};
    r.verdict = example <= 1e-12 && worst <= 1e-8;
    r.summary = "diag(i, j) x = (k, 1) gives x = (j, -j)";
    r.witness = nlohmann::json{{"x1", to_text(x[0])}, {"x2", to_text(x[1])}};
    return r;
}

ScenarioReport rank_demo(const ScenarioOptions& o) {
    const Element i = Element::basis(H(), 1), j = Element::basis(H(), 2);
    BiMatrix demo(H(), {{i, i}, {j, j}});
    RankResult rr = rc_rank(demo);
    const auto& lam = rr.dependencies.at(0);
    BiMatrix zero = rc_mul(BiMatrix::row(lam), demo);
    Rng rng(o.seed);
    double border = 0;
    int rank_ok = 0;
    for (int t = 0; t < 50; ++t) {
        size_t want = t % 2 == 0 ? 1 : 2;
        BiMatrix a = rc_mul(BiMatrix::random(H(), 3, want, rng), BiMatrix::random(H(), want, 3, rng));
        RankResult r2 = rc_rank(a);
        border = std::max(border, r2.max_border_quasidet);
        rank_ok += r2.rank == want;
    }
    ScenarioReport r;
    r.metrics = {{"demo_rank", rr.rank}, {"demo_dependency_residual", zero.max_norm()},
                 {"constructed_matrices", 50}, {"constructed_rank_correct", rank_ok},
                 {"max_border_quasidet", border}};
    r.verdict = rr.rank == 1 && zero.max_norm() <= 1e-12 && rank_ok == 50 && border <= 1e-8;
    r.witness = nlohmann::json{{"major", to_json(rr.major)},
                               {"lambda", {to_text(lam[0]), to_text(lam[1])}}};
    r.summary = "rank of [[i, i], [j, j]] is 1 with row dependency (k, -1)";
    return r;
}

ScenarioReport eigen_offdiag_demo(const ScenarioOptions& o) {
    ScenarioReport r;
    r.verdict = true;
    double worst = 0;
    const Element fs[] = {Element::one(H()), Element::basis(H(), 1), q(1, 0, 1, 0)};
    for (const auto& f : fs) {
        BiMatrix a(H(), {{Element(H()), f}, {f, Element(H())}});
        for (const auto& b : eigen_offdiag(f)) {
            bool singular = rc_singular(sub(a, left_scale(b, BiMatrix::identity(H(), 2))));
            r.verdict = r.verdict && singular;
            // eigen curve with c = (1, +-1)
            Element sgn = norm(sub(b, f)) == 0 ? Element::one(H()) : Element::scalar(H(), -1);
            LinearOde ode(a, OdeForm::rc_left, {Element::one(H()), sgn});
            Report er = eigen_solution_check(ode, b, Side::left, {0.0, 0.5, 1.0});
            worst = std::max(worst, er.residual);
        }
    }
    Element b = elliptic_eigen_sample(o.seed);
    double sq = dist(mul(b, b), Element::scalar(H(), -1));
    r.metrics = {{"max_eigen_curve_residual", worst}, {"elliptic_sample_square_err", sq}};
    r.verdict = r.verdict && worst <= kFdTol && sq <= 1e-12;
    r.summary = "b = +-f make a - bE singular and e^{bt}(1, +-1) solves the system";
    return r;
}

// --- integrability / exactness ---------------------------------------------

FormPoly form_x2(const AlgebraDesc& alg) {
    return {SlotTensor::word(Element::one(alg), {0, 1}, 1),
            SlotTensor::word(Element::one(alg), {1, 0}, 1)};
}

FormPoly form_3xx(const AlgebraDesc& alg) {
    return {SlotTensor::word(Element::scalar(alg, 3.0), {0, 1, 0}, 1)};
}

ScenarioReport copy_report(const Report& rep, ScenarioReport r) {
    for (const auto& [k, v] : rep.metrics) r.metrics[k] = v;
    r.witness = rep.witness;
    return r;
}

ScenarioReport integrability_x2(const ScenarioOptions& o) {
    const AlgebraDesc& alg = algebra_or(o, AlgebraTag::quaternion);
    Report rep = integrability_check(form_x2(alg), o.probes, o.seed);
    const auto pts = sample_elements(alg, 8, o.seed + 1), dirs = sample_elements(alg, 4, o.seed + 2);
    Report anti = antiderivative_residual([](const Element& x) { return mul(x, x); }, form_x2(alg),
                                          pts, dirs);
    ScenarioReport r = copy_report(rep, {});
    r.metrics["antiderivative_residual"] = anti.residual;
    r.verdict = rep.verdict && anti.verdict;
    r.summary = rep.verdict ? "integrable; y = x^2 is a primitive" : "not integrable";
    return r;
}

ScenarioReport integrability_3xx(const ScenarioOptions& o) {
    const AlgebraDesc& alg = algebra_or(o, AlgebraTag::quaternion);
    Report rep = integrability_check(form_3xx(alg), o.probes, o.seed);
    const auto pts = sample_elements(alg, 8, o.seed + 1), dirs = sample_elements(alg, 4, o.seed + 2);
    Report anti = antiderivative_residual([](const Element& x) { return mul(mul(x, x), x); },
                                          form_3xx(alg), pts, dirs);
    const bool commutative = alg.tag() != AlgebraTag::quaternion;
    ScenarioReport r = copy_report(rep, {});
    r.metrics["antiderivative_residual_x3"] = anti.residual;
    r.metrics["expected_integrable"] = commutative ? 1.0 : 0.0;
    if (commutative)
        r.verdict = rep.verdict && anti.verdict;
    else
        r.verdict = !rep.verdict && !rep.has_flag("inconclusive") && anti.residual > 1e-2;
    r.summary = rep.verdict ? "integrable" : "not integrable";
    return r;
}

BiForm form(const AlgebraDesc& alg, const char* text) { return BiForm::parse(alg, text); }

ScenarioReport exact_723(const ScenarioOptions& o) {
    BiForm M = form(H(), "d + d*y"), N = form(H(), "x*d + d");
    Report ex = exactness_check(M, N, o.probes, o.seed);
    Report u = implicit_solution_check(
        [](const Element& x, const Element& y) { return add(add(x, mul(x, y)), y); }, M, N,
        o.probes, o.seed);
    ScenarioReport r = copy_report(ex, {});
    r.metrics["potential_residual"] = u.residual;
    r.verdict = ex.verdict && u.verdict;
    r.summary = "exact; u = x + xy + y is a potential";
    return r;
}

ScenarioReport exact_724(const ScenarioOptions& o) {
    Report ex = exactness_check(form(H(), "3*x*x*d + d*y"), form(H(), "x*d"), o.probes, o.seed);
    ScenarioReport r = copy_report(ex, {});
    r.verdict = !ex.verdict && !ex.has_flag("inconclusive") && ex.metrics["cond_dM_dx"] > kWitnessMin;
    r.summary = ex.verdict ? "exact" : "not exact: dM/dx is not symmetric";
    return r;
}

ScenarioReport exact_725(const ScenarioOptions& o) {
    Report ex = exactness_check(form(H(), "d*y"), form(H(), "d*x"), o.probes, o.seed);
    ScenarioReport r = copy_report(ex, {});
    r.verdict = !ex.verdict && !ex.has_flag("inconclusive") &&
                ex.metrics["cond_mixed"] > kWitnessMin && ex.metrics["cond_dM_dx"] <= kExactTol &&
                ex.metrics["cond_dN_dy"] <= kExactTol;
    r.summary = ex.verdict ? "exact" : "not exact: dx dy differs from dy dx";
    return r;
}

ScenarioReport separable_712(const ScenarioOptions& o) {
    BiForm M = form(H(), "d*x + x*d"), N = form(H(), "d*y + y*d");
    Report ex = exactness_check(M, N, o.probes, o.seed);
    Report u = implicit_solution_check(
        [](const Element& x, const Element& y) { return add(mul(x, x), mul(y, y)); }, M, N,
        o.probes, o.seed);
    ScenarioReport r = copy_report(ex, {});
    r.metrics["potential_residual"] = u.residual;
    r.verdict = ex.verdict && u.verdict;
    r.summary = "u = x^2 + y^2 solves the separated equation";
    return r;
}

// --- series -----------------------------------------------------------------

ScenarioReport exp_properties(const ScenarioOptions& o) {
    const SeriesParams& p = o.series;
    Rng rng(o.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double commuting = 0, conj_err = 0;
    for (int t = 0; t < 50; ++t) {
        Element a = random_element(H(), rng);
        Element b = add(Element::scalar(H(), u(rng)), scale(a, u(rng)));
        commuting = std::max(commuting, dist(exp_el(add(a, b), p), mul(exp_el(a, p), exp_el(b, p))));
        Element x = random_element(H(), rng);
        conj_err = std::max(conj_err, dist(mul(a, exp_el(mul(x, a), p)), mul(exp_el(mul(a, x), p), a)));
    }
    const Element i = Element::basis(H(), 1), j = Element::basis(H(), 2);
    double ij = dist(exp_el(add(i, j), p), mul(exp_el(i, p), exp_el(j, p)));
    ScenarioReport r;
    r.metrics = {{"max_commuting_err", commuting}, {"noncommuting_gap_i_j", ij},
                 {"max_conjugation_err", conj_err}};
    r.verdict = commuting <= 1e-10 && ij > 1e-3 && conj_err <= 1e-10;
    r.summary = "e^{a+b} = e^a e^b iff ab = ba; a e^{xa} = e^{ax} a";
    return r;
}

ScenarioReport quasiexp_demo(const ScenarioOptions& o) {
    const SeriesParams& p = o.series;
    Rng rng(o.seed);
    double at_zero = 0, central = 0, ode = 0;
    const Element one = Element::one(H());
    for (int t = 0; t < 20; ++t) {
        Element c = random_element(H(), rng), x = random_element(H(), rng);
        at_zero = std::max(at_zero, dist(quasiexp({c}, Element(H()), p), c));
        Element s = Element::scalar(H(), c[0]);
        central = std::max(central, dist(quasiexp({s}, x, p), mul(s, exp_el(x, p))));
        const double h = kFdStep * (1.0 + norm(x));
        Element fd = scale(sub(quasiexp({c}, add(x, scale(one, h)), p),
                               quasiexp({c}, sub(x, scale(one, h)), p)),
                           0.5 / h);
        ode = std::max(ode, dist(fd, quasiexp({c}, x, p)));
    }
    ScenarioReport r;
    r.metrics = {{"max_err_at_zero", at_zero}, {"max_central_err", central}, {"max_ode_residual", ode}};
    r.verdict = at_zero <= 1e-12 && central <= 1e-10 && ode <= kFdTol;
    r.summary = "e[c]^0 = c, e[c]^x = c e^x for central c, dy/dx o 1 = y";
    return r;
}

// --- trigonometry / ODEs -----------------------------------------------------

const double kEulerTs[] = {0.1, 0.5, 1.0, 2.0};

ScenarioReport euler_hyperbolic(const ScenarioOptions& o) {
    const AlgebraDesc& R = make_algebra(AlgebraTag::real);
    const SeriesParams& p = o.series;
    double euler = 0, closed = 0;
    BiMatrix a(R, {{Element(R), Element::one(R)}, {Element::one(R), Element(R)}});
    LinearOde ode(a, OdeForm::rc_left, {Element(R), Element::one(R)});
    SolutionCurve c = closed_form_solution(ode, p);
    for (double t : kEulerTs) {
        Element tt = Element::scalar(R, t);
        Element ep = exp_el(tt, p), em = exp_el(neg(tt), p);
        euler = std::max(euler, dist(sinh_el(tt, p), scale(sub(ep, em), 0.5)));
        euler = std::max(euler, dist(cosh_el(tt, p), scale(add(ep, em), 0.5)));
        State x = c(t);
        closed = std::max({closed, std::abs(x[0][0] - std::sinh(t)), std::abs(x[1][0] - std::cosh(t))});
    }
    State x1 = c(1.0);
    ScenarioReport r;
    r.metrics = {{"max_euler_err", euler}, {"max_closed_form_err", closed},
                 {"x1_at_1", x1[0][0]}, {"x2_at_1", x1[1][0]}};
    r.verdict = euler <= 1e-10 && closed <= 1e-10;
    r.summary = "sinh t = (e^t - e^-t)/2, cosh t = (e^t + e^-t)/2; x(t) = (sinh t, cosh t)";
    return r;
}

ScenarioReport euler_quaternion(const ScenarioOptions& o) {
    const SeriesParams& p = o.series;
    const double s = 1.0 / std::sqrt(2.0);
    const Element fs[] = {q(0, 1, 0, 0), q(0, s, s, 0), q(0, 0, 0, 2)};
    double euler = 0, commute = 0, closed = 0, deriv = 0;
    for (const auto& f : fs) {
        BiMatrix a(H(), {{Element(H()), f}, {f, Element(H())}});
        LinearOde ode(a, OdeForm::rc_left, {Element(H()), Element::one(H())});
        SolutionCurve c = closed_form_solution(ode, p);
        for (double t : kEulerTs) {
            Element tf = scale(f, t);
            Element sh = sinh_el(tf, p), ch = cosh_el(tf, p);
            Element ep = exp_el(tf, p), em = exp_el(neg(tf), p);
            euler = std::max({euler, dist(sh, scale(sub(ep, em), 0.5)), dist(ch, scale(add(ep, em), 0.5))});
            commute = std::max({commute, norm(commutator(sh, f)), norm(commutator(ch, f))});
            State x = c(t);
            closed = std::max({closed, dist(x[0], sh), dist(x[1], ch)});
            const double h = kFdStep * (1.0 + t);
            Element dsh = scale(sub(sinh_el(scale(f, t + h), p), sinh_el(scale(f, t - h), p)), 0.5 / h);
            Element dch = scale(sub(cosh_el(scale(f, t + h), p), cosh_el(scale(f, t - h), p)), 0.5 / h);
            deriv = std::max({deriv, dist(dsh, mul(f, ch)), dist(dch, mul(f, sh))});
        }
    }
    ScenarioReport r;
    r.metrics = {{"max_euler_err", euler}, {"max_commutator", commute},
                 {"max_closed_form_err", closed}, {"max_derivative_err", deriv}};
    r.verdict = euler <= 1e-10 && commute <= 1e-10 && closed <= 1e-9 && deriv <= kFdTol;
    r.summary = "quaternion Euler formulas for f in {i, (i+j)/sqrt2, 2k}";
    return r;
}

const std::vector<double> kResidualTs = {0.0, 0.25, 0.5, 0.75, 1.0};

ScenarioReport elliptic_nonunique(const ScenarioOptions&) {
    LinearOde ode = elliptic_ode();
    SolutionCurve rk = rk4_integrate(ode, 1.0, 10000);
    SolutionCurve ex = elliptic_example_curve();
    Report r1 = solution_residual(ode, rk, kResidualTs);
    Report r2 = solution_residual(ode, ex, kResidualTs);
    double init_rk = state_dist(rk(0.0), ode.init), init_ex = state_dist(ex(0.0), ode.init);
    State a = rk(1.0), b = ex(1.0);
    double diff = state_dist(a, b);
    ScenarioReport r;
    r.metrics = {{"rk4_residual", r1.residual}, {"example_residual", r2.residual},
                 {"rk4_init_err", init_rk}, {"example_init_err", init_ex},
                 {"difference_at_1", diff}, {"required_difference", 0.1}};
    r.verdict = r1.verdict && r2.verdict && init_rk == 0.0 && init_ex <= 1e-15 && diff > 0.1;
    r.witness = nlohmann::json{{"rk4_at_1", to_json(a)}, {"example_at_1", to_json(b)}};
    r.summary = diff > 0.1 ? "two distinct solutions with the same initial value"
                           : "the alternate curve coincides with (sin t, cos t); no second solution";
    return r;
}

ScenarioReport elliptic_family_scn(const ScenarioOptions&) {
    LinearOde ode = elliptic_ode();
    double worst = 0, init = 0, dev = 0;
    const Element Cs[] = {Element(H()), Element::one(H()), Element::basis(H(), 1)};
    for (const auto& C : Cs) {
        SolutionCurve c = elliptic_family(C);
        worst = std::max(worst, solution_residual(ode, c, kResidualTs).residual);
        init = std::max(init, state_dist(c(0.0), ode.init));
        State x = c(1.0);
        State sc{Element::scalar(H(), std::sin(1.0)), Element::scalar(H(), std::cos(1.0))};
        dev = std::max(dev, state_dist(x, sc));
    }
    ScenarioReport r;
    r.metrics = {{"max_residual", worst}, {"max_init_err", init}, {"max_dev_from_sin_cos_at_1", dev}};
    r.verdict = worst <= kFdTol && init <= 1e-12;
    r.summary = "family members for C in {0, 1, i} solve the system with x(0) = (0, 1)";
    return r;
}

ScenarioReport ode_forms_cross_check(const ScenarioOptions& o) {
    Rng rng(o.seed);
    double cross = 0, resid = 0;
    const int systems = 20;
    std::vector<double> grid;
    for (int g = 0; g <= 10; ++g) grid.push_back(g / 10.0);
    for (int s = 0; s < systems; ++s) {
        BiMatrix a = BiMatrix::random(H(), 2, 2, rng, 0.5);
        State init{random_element(H(), rng), random_element(H(), rng)};
        for (OdeForm f : kAllForms) {
            LinearOde ode(a, f, init);
            SolutionCurve c = closed_form_solution(ode, o.series);
            SolutionCurve rk = rk4_integrate(ode, 1.0, 10000);
            for (double t : grid) cross = std::max(cross, state_dist(c(t), rk(t)));
            resid = std::max(resid, solution_residual(ode, c, grid).residual);
        }
    }
    ScenarioReport r;
    r.metrics = {{"systems", systems}, {"max_closed_vs_rk4", cross}, {"max_residual", resid}};
    r.verdict = cross <= 1e-6 && resid <= kFdTol;
    r.summary = "matrix-exponential solutions match RK4 in all four product forms";
    return r;
}

ScenarioReport ode_fixture(const ScenarioOptions& o) {
    if (o.file.empty()) throw Error(Errc::bad_argument, "ode-fixture needs --file");
    std::ifstream in(o.file);
    if (!in) throw Error(Errc::bad_argument, "cannot open " + o.file);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
    return run_ode_fixture(j, o);
}

std::vector<Scenario> build_registry() {
    return {
        {"quasidet-2x2", "2x2 quasideterminant closed forms",
         "recursive quasideterminants and rc-inverse vs closed forms on 200 random matrices",
         quasidet_2x2},
        {"solve-quaternion-system", "nonsingular rc linear system",
         "diag(i, j) x = (k, 1) and random 3x3 quaternion systems", solve_quaternion_system},
        {"rank-demo", "major minor and bordered quasideterminants",
         "rank of [[i,i],[j,j]] and of constructed rank-1/rank-2 matrices", rank_demo},
        {"eigen-offdiag", "eigenvalues of [[0,f],[f,0]]",
         "b = +-f roots, eigen curves e^{bt} c, unit imaginary samples", eigen_offdiag_demo},
        {"integrability-x2", "integrable form x(x)1 + 1(x)x",
         "dg symmetric; y = x^2 is a primitive", integrability_x2},
        {"integrability-3xx", "form 3 x(x)x",
         "not integrable over H (witness), integrable over C; use --algebra", integrability_3xx},
        {"exact-723", "exact equation with potential x + xy + y", "M = d + d y, N = x d + d",
         exact_723},
        {"exact-724", "non-exact equation, x-part", "M = 3x^2 d + d y, N = x d", exact_724},
        {"exact-725", "non-exact equation, order-sensitive", "M = d y, N = d x", exact_725},
        {"separable-712", "separated variables, potential x^2 + y^2",
         "M = d x + x d, N = d y + y d", separable_712},
        {"exp-properties", "exponent of a sum and conjugation",
         "e^{a+b} vs e^a e^b, a e^{xa} = e^{ax} a", exp_properties},
        {"quasiexp-demo", "quasiexponent expansion and its equation",
         "e[c]^0 = c, central c, dy/dx o 1 = y", quasiexp_demo},
        {"euler-hyperbolic", "hyperbolic Euler formula over the reals",
         "sinh/cosh from exponents; x' = [[0,1],[1,0]] x", euler_hyperbolic},
        {"euler-quaternion", "hyperbolic Euler formula over the quaternions",
         "sinh(tf), cosh(tf) for f in {i, (i+j)/sqrt2, 2k}", euler_quaternion},
        {"elliptic-nonunique", "elliptic system, alternate exponential solution",
         "RK4 curve vs 1/2(-i+j)(e^{it} - e^{jt}) with x(0) = (0, 1)", elliptic_nonunique},
        {"elliptic-family", "elliptic system, three-exponential family",
         "residuals and initial values for C in {0, 1, i}", elliptic_family_scn},
        {"ode-forms-cross-check", "linear systems in four product forms",
         "closed form vs RK4 on 20 random quaternion systems per form", ode_forms_cross_check},
        {"ode-fixture", "linear system from a JSON fixture",
         "--file path with {ode: {matrix, form, init}, checks: [...]}", ode_fixture},
    };
}

}  // namespace

const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> reg = build_registry();
    return reg;
}

const Scenario* find_scenario(const std::string& name) {
    for (const auto& s : scenarios())
        if (s.name == name) return &s;
    return nullptr;
}

ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opts) {
    const Scenario* s = find_scenario(name);
    if (!s) throw Error(Errc::bad_argument, "unknown scenario: " + name);
    ScenarioReport r = s->run(opts);
    r.scenario = s->name;
    r.anchor = s->anchor;
    r.seed = opts.seed;
    return r;
}

std::string list_scenarios() {
    std::ostringstream os;
    for (const auto& s : scenarios()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%-24s", s.name.c_str());
        os << buf << s.description << "  [" << s.anchor << "]\n";
    }
    return os.str();
}

nlohmann::json to_json(const ScenarioReport& r) {
    nlohmann::json j = {{"scenario", r.scenario}, {"anchor", r.anchor},   {"verdict", r.verdict},
                        {"metrics", r.metrics},   {"summary", r.summary}, {"seed", r.seed}};
    if (r.witness) j["witness"] = *r.witness;
    return j;
}

std::string to_text(const ScenarioReport& r) {
    std::ostringstream os;
    os << r.scenario << ": " << (r.verdict ? "PASS" : "FAIL") << "\n";
    os << "  anchor:  " << r.anchor << "\n";
    os << "  summary: " << r.summary << "\n";
    os << "  seed:    " << r.seed << "\n";
    for (const auto& [k, v] : r.metrics) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        os << "  " << k << " = " << buf << "\n";
    }
    if (r.witness) os << "  witness: " << r.witness->dump() << "\n";
    return os.str();
}

ScenarioReport run_ode_fixture(const nlohmann::json& fixture, const ScenarioOptions& opts) {
    ScenarioReport r;
    r.scenario = "ode-fixture";
    r.anchor = "linear system from a JSON fixture";
    r.seed = opts.seed;
    try {
        const auto& o = fixture.at("ode");
        BiMatrix a = bimatrix_from_json(o.at("matrix"));
        State init;
        for (const auto& e : o.at("init")) init.push_back(element_from_json(e, &a.algebra()));
        LinearOde ode(a, parse_form(o.at("form").get<std::string>()), init);
        SolutionCurve c = closed_form_solution(ode, opts.series);
        std::vector<double> ts = {0.0, 0.5, 1.0};
        if (fixture.contains("ts")) ts = fixture.at("ts").get<std::vector<double>>();
        nlohmann::json checks = fixture.value("checks", nlohmann::json::array({"residual"}));
        r.verdict = true;
        for (const auto& chk : checks) {
            const std::string name = chk.get<std::string>();
            if (name == "residual") {
                Report rep = solution_residual(ode, c, ts);
                r.metrics["residual"] = rep.residual;
                r.verdict = r.verdict && rep.verdict;
            } else if (name == "rk4") {
                double t_end = 0;
                for (double t : ts) t_end = std::max(t_end, t);
                if (t_end == 0) t_end = 1.0;
                SolutionCurve rk = rk4_integrate(ode, t_end, 10000);
                double worst = 0;
                for (double t : ts)
                    if (t >= 0) worst = std::max(worst, state_dist(c(t), rk(t)));
                r.metrics["closed_vs_rk4"] = worst;
                r.verdict = r.verdict && worst <= 1e-6;
            } else if (name == "init") {
                double e = state_dist(c(0.0), ode.init);
                r.metrics["init_err"] = e;
                r.verdict = r.verdict && e == 0.0;
            } else {
                throw Error(Errc::parse_error, "unknown check: " + name);
            }
        }
        r.witness = nlohmann::json{{"x_at_last_t", to_json(c(ts.back()))}};
        r.summary = std::string("form ") + form_name(ode.form);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
    return r;
}

}  // namespace divcalc
