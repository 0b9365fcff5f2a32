#include "divcalc/diffeq.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>

namespace divcalc {

Element eval_form(const FormPoly& g, const Element& x, const Element& h) {
    Element sum(x.algebra());
    for (const auto& s : g) {
        if (s.arg_slots() != 1) throw Error(Errc::arity_mismatch, "form component needs one slot");
        sum += eval_args(s, {h}, x);
    }
    return sum;
}

std::vector<Element> sample_elements(const AlgebraDesc& alg, int count, std::uint64_t seed,
                                     double scale) {
    Rng rng(seed);
    std::vector<Element> out;
    for (int i = 0; i < count; ++i) out.push_back(random_element(alg, rng, scale));
    return out;
}

namespace {

// Marks a failed verdict as inconclusive when no witness clears kWitnessMin.
void finish_negative(Report& r, double worst) {
    r.metrics["max_violation"] = worst;
    if (!r.verdict && worst <= kWitnessMin) r.flag("inconclusive");
}

}  // namespace

Report integrability_check(const FormPoly& g, int probes, std::uint64_t seed) {
    Report rep;
    if (g.empty()) {
        rep.verdict = true;
        return rep;
    }
    const AlgebraDesc& alg = g[0].algebra();
    std::vector<SlotTensor> dg;
    for (const auto& s : g) {
        if (s.arg_slots() != 1) throw Error(Errc::arity_mismatch, "form component needs one slot");
        dg.push_back(slot_derivative(s));
    }
    Rng rng(seed);
    double worst = 0;
    nlohmann::json first_clear, first_any;
    for (int p = 0; p < probes; ++p) {
        Element x = random_element(alg, rng), h1 = random_element(alg, rng),
                h2 = random_element(alg, rng);
        Element v = sub(eval_args(dg, {h1, h2}, x), eval_args(dg, {h2, h1}, x));
        double nv = norm(v);
        worst = std::max(worst, nv);
        nlohmann::json w = {{"probe", p},       {"x", to_text(x)},  {"h1", to_text(h1)},
                            {"h2", to_text(h2)}, {"violation", nv}};
        if (nv > kIntegrableTol && first_any.is_null()) first_any = w;
        if (nv > kWitnessMin && first_clear.is_null()) first_clear = w;
    }
    rep.residual = worst;
    rep.verdict = worst <= kIntegrableTol;
    rep.metrics["integrable"] = rep.verdict ? 1.0 : 0.0;
    rep.metrics["probes"] = probes;
    if (!rep.verdict) rep.witness = first_clear.is_null() ? first_any : first_clear;
    finish_negative(rep, worst);
    return rep;
}

Report antiderivative_residual(const ElementFn& y, const FormPoly& g,
                               const std::vector<Element>& points,
                               const std::vector<Element>& dirs) {
    Report rep;
    double worst = 0;
    for (const auto& x : points)
        for (const auto& h : dirs) {
            double s = kFdStep * (1.0 + norm(x));
            Element fd = scale(sub(y(add(x, scale(h, s))), y(sub(x, scale(h, s)))), 0.5 / s);
            double r = dist(fd, eval_form(g, x, h));
            if (r > worst) {
                worst = r;
                rep.witness = nlohmann::json{{"x", to_text(x)}, {"h", to_text(h)}, {"residual", r}};
            }
        }
    rep.residual = worst;
    rep.verdict = worst <= kFdTol;
    rep.metrics["residual"] = worst;
    if (rep.verdict) rep.witness.reset();
    return rep;
}

namespace {

struct Factor {
    enum Kind { constant, x, y, d } kind;
    Element value;
};

struct Word {
    std::vector<Factor> factors;
};

Element eval_word(const Word& w, const Element& x, const Element& y, const Element& d) {
    Element p = Element::one(x.algebra());
    for (const auto& f : w.factors) {
        switch (f.kind) {
            case Factor::constant: p = mul(p, f.value); break;
            case Factor::x: p = mul(p, x); break;
            case Factor::y: p = mul(p, y); break;
            case Factor::d: p = mul(p, d); break;
        }
    }
    return p;
}

}  // namespace

BiForm::BiForm(const AlgebraDesc& alg, Fn fn) : alg_(&alg), fn_(std::move(fn)) {
    Rng rng(0x11fe);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 4; ++t) {
        Element x = random_element(alg, rng), y = random_element(alg, rng),
                d1 = random_element(alg, rng), d2 = random_element(alg, rng);
        double a = u(rng), b = u(rng);
        Element f1 = fn_(x, y, d1), f2 = fn_(x, y, d2);
        Element lhs = fn_(x, y, add(scale(d1, a), scale(d2, b)));
        Element rhs = add(scale(f1, a), scale(f2, b));
        if (dist(lhs, rhs) > 1e-9 * (1.0 + norm(f1) + norm(f2)))
            throw Error(Errc::bad_argument, "form is not linear in its differential");
    }
}

BiForm BiForm::parse(const AlgebraDesc& alg, const std::string& text) {
    std::vector<Word> words;
    size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) {
        throw Error(Errc::parse_error, why + " at offset " + std::to_string(pos) + " in '" + text + "'");
    };
    double sign = 1.0;
    skip();
    if (pos < text.size() && text[pos] == '-') {
        sign = -1.0;
        ++pos;
    }
    for (;;) {
        Word w;
        w.factors.push_back({Factor::constant, Element::scalar(alg, sign)});
        int ds = 0;
        for (;;) {
            skip();
            if (pos >= text.size()) fail("expected factor");
            char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                size_t used = 0;
                double v = std::stod(text.substr(pos), &used);
                pos += used;
                w.factors.push_back({Factor::constant, Element::scalar(alg, v)});
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                size_t start = pos;
                while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
                std::string id = text.substr(start, pos - start);
                if (id == "x") {
                    w.factors.push_back({Factor::x, Element(alg)});
                } else if (id == "y") {
                    w.factors.push_back({Factor::y, Element(alg)});
                } else if (id == "d") {
                    w.factors.push_back({Factor::d, Element(alg)});
                    ++ds;
                } else {
                    const auto& names = alg.basis_names();
                    auto it = std::find(names.begin(), names.end(), id);
                    if (it == names.end()) fail("unknown symbol '" + id + "'");
                    w.factors.push_back(
                        {Factor::constant, Element::basis(alg, static_cast<int>(it - names.begin()))});
                }
            } else {
                fail("unexpected character");
            }
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (ds != 1) fail("each word needs exactly one d");
        words.push_back(std::move(w));
        if (pos >= text.size()) break;
        if (text[pos] == '+') {
            sign = 1.0;
        } else if (text[pos] == '-') {
            sign = -1.0;
        } else {
            fail("expected + or -");
        }
        ++pos;
    }
    return BiForm(alg, [words](const Element& x, const Element& y, const Element& d) {
        Element s(x.algebra());
        for (const auto& w : words) s += eval_word(w, x, y, d);
        return s;
    });
}

Report exactness_check(const BiForm& M, const BiForm& N, int probes, std::uint64_t seed) {
    const AlgebraDesc& alg = M.algebra();
    Rng rng(seed);
    double c1 = 0, c2 = 0, c3 = 0, worst = 0;
    Report rep;
    nlohmann::json first_clear, first_any;
    for (int p = 0; p < probes; ++p) {
        Element x = random_element(alg, rng), y = random_element(alg, rng);
        Element dx1 = random_element(alg, rng), dx2 = random_element(alg, rng);
        Element dy1 = random_element(alg, rng), dy2 = random_element(alg, rng);
        const double s = kFdStep * (1.0 + std::max(norm(x), norm(y)));
        auto dM_dx = [&](const Element& d, const Element& v) {
            return scale(sub(M(add(x, scale(v, s)), y, d), M(sub(x, scale(v, s)), y, d)), 0.5 / s);
        };
        auto dM_dy = [&](const Element& d, const Element& v) {
            return scale(sub(M(x, add(y, scale(v, s)), d), M(x, sub(y, scale(v, s)), d)), 0.5 / s);
        };
        auto dN_dx = [&](const Element& d, const Element& v) {
            return scale(sub(N(add(x, scale(v, s)), y, d), N(sub(x, scale(v, s)), y, d)), 0.5 / s);
        };
        auto dN_dy = [&](const Element& d, const Element& v) {
            return scale(sub(N(x, add(y, scale(v, s)), d), N(x, sub(y, scale(v, s)), d)), 0.5 / s);
        };
        double v1 = dist(dM_dx(dx1, dx2), dM_dx(dx2, dx1));
        double v2 = dist(dN_dy(dy1, dy2), dN_dy(dy2, dy1));
        // mixed condition keeps argument order: dM/dy o (dx, dy) vs dN/dx o (dy, dx)
        double v3 = dist(dM_dy(dx1, dy1), dN_dx(dy1, dx1));
        c1 = std::max(c1, v1);
        c2 = std::max(c2, v2);
        c3 = std::max(c3, v3);
        double v = std::max({v1, v2, v3});
        worst = std::max(worst, v);
        const char* which = v == v1 ? "dM/dx symmetric" : v == v2 ? "dN/dy symmetric" : "mixed";
        nlohmann::json w = {{"probe", p},          {"x", to_text(x)},     {"y", to_text(y)},
                            {"dx", to_text(dx1)},  {"dy", to_text(dy1)},  {"condition", which},
                            {"violation", v}};
        if (v > kExactTol && first_any.is_null()) first_any = w;
        if (v > kWitnessMin && first_clear.is_null()) first_clear = w;
    }
    rep.metrics["cond_dM_dx"] = c1;
    rep.metrics["cond_dN_dy"] = c2;
    rep.metrics["cond_mixed"] = c3;
    rep.residual = worst;
    rep.verdict = worst <= kExactTol;
    rep.metrics["exact"] = rep.verdict ? 1.0 : 0.0;
    if (!rep.verdict) rep.witness = first_clear.is_null() ? first_any : first_clear;
    finish_negative(rep, worst);
    return rep;
}

Report implicit_solution_check(const Potential& u, const BiForm& M, const BiForm& N, int probes,
                               std::uint64_t seed) {
    const AlgebraDesc& alg = M.algebra();
    Rng rng(seed);
    Report rep;
    double wx = 0, wy = 0;
    for (int p = 0; p < probes; ++p) {
        Element x = random_element(alg, rng), y = random_element(alg, rng);
        Element dx = random_element(alg, rng), dy = random_element(alg, rng);
        const double s = kFdStep * (1.0 + std::max(norm(x), norm(y)));
        Element ux = scale(sub(u(add(x, scale(dx, s)), y), u(sub(x, scale(dx, s)), y)), 0.5 / s);
        Element uy = scale(sub(u(x, add(y, scale(dy, s))), u(x, sub(y, scale(dy, s)))), 0.5 / s);
        double ex = dist(ux, M(x, y, dx)), ey = dist(uy, N(x, y, dy));
        if (std::max(ex, ey) > std::max(wx, wy))
            rep.witness = nlohmann::json{{"probe", p}, {"x", to_text(x)}, {"y", to_text(y)},
                                         {"err_x", ex}, {"err_y", ey}};
        wx = std::max(wx, ex);
        wy = std::max(wy, ey);
    }
    rep.metrics["residual_x"] = wx;
    rep.metrics["residual_y"] = wy;
    rep.residual = std::max(wx, wy);
    rep.verdict = rep.residual <= kFdTol;
    if (rep.verdict) rep.witness.reset();
    return rep;
}

const char* form_name(OdeForm f) {
    switch (f) {
        case OdeForm::rc_left: return "rc_left";
        case OdeForm::cr_right: return "cr_right";
        case OdeForm::cr_left: return "cr_left";
        case OdeForm::rc_right: return "rc_right";
    }
    return "?";
}

OdeForm parse_form(const std::string& s) {
    for (OdeForm f : kAllForms)
        if (s == form_name(f)) return f;
    throw Error(Errc::parse_error, "unknown ode form: " + s);
}

LinearOde::LinearOde(BiMatrix a_, OdeForm form_, std::vector<Element> init_)
    : a(std::move(a_)), form(form_), init(std::move(init_)) {
    if (!a.square()) throw Error(Errc::shape_mismatch, "ode matrix must be square");
    if (init.size() != a.rows()) throw Error(Errc::shape_mismatch, "initial condition length");
    for (const auto& e : init)
        if (e.algebra_ptr() != &a.algebra()) throw Error(Errc::algebra_mismatch, "algebra mismatch");
}

namespace {

State flatten(const BiMatrix& m) { return m.entries(); }

}  // namespace

State rhs(const LinearOde& ode, const State& x) {
    switch (ode.form) {
        case OdeForm::rc_left: return flatten(rc_mul(ode.a, BiMatrix::column(x)));
        case OdeForm::cr_right: return flatten(cr_mul(BiMatrix::column(x), ode.a));
        case OdeForm::cr_left: return flatten(cr_mul(ode.a, BiMatrix::row(x)));
        case OdeForm::rc_right: return flatten(rc_mul(BiMatrix::row(x), ode.a));
    }
    return {};
}

State SolutionCurve::operator()(double t) const {
    if (t < t_min || t > t_max) throw Error(Errc::bad_argument, "curve evaluated outside its interval");
    return eval(t);
}

double state_dist(const State& a, const State& b) {
    if (a.size() != b.size()) throw Error(Errc::shape_mismatch, "state length");
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = dist(a[i], b[i]);
        s += d * d;
    }
    return std::sqrt(s);
}

SolutionCurve closed_form_solution(const LinearOde& ode, const SeriesParams& p) {
    SolutionCurve c;
    c.provenance = "closed-form";
    c.eval = [ode, p](double t) -> State {
        if (t == 0.0) return ode.init;
        const BiMatrix ta = scale(ode.a, t);
        switch (ode.form) {
            case OdeForm::rc_left: return flatten(rc_mul(mexp_rc(ta, p), BiMatrix::column(ode.init)));
            case OdeForm::cr_right: return flatten(cr_mul(BiMatrix::column(ode.init), mexp_cr(ta, p)));
            case OdeForm::cr_left: return flatten(cr_mul(mexp_cr(ta, p), BiMatrix::row(ode.init)));
            case OdeForm::rc_right: return flatten(rc_mul(BiMatrix::row(ode.init), mexp_rc(ta, p)));
        }
        return {};
    };
    return c;
}

std::vector<BiMatrix> successive_powers(const LinearOde& ode, int n) {
    if (n < 0) throw Error(Errc::bad_argument, "negative power count");
    const bool rc = ode.form == OdeForm::rc_left || ode.form == OdeForm::rc_right;
    std::vector<BiMatrix> out{BiMatrix::identity(ode.a.algebra(), ode.a.rows())};
    for (int i = 1; i <= n; ++i) out.push_back(rc ? rc_mul(out.back(), ode.a) : cr_mul(out.back(), ode.a));
    return out;
}

SolutionCurve eigen_solution(const Element& b, const State& c, Side side, const SeriesParams& p) {
    if (c.empty()) throw Error(Errc::bad_argument, "empty eigen vector");
    SolutionCurve curve;
    curve.provenance = "eigen";
    curve.eval = [b, c, side, p](double t) {
        Element e = exp_at(b, t, p);
        State x;
        for (const auto& ci : c) x.push_back(side == Side::left ? mul(e, ci) : mul(ci, e));
        return x;
    };
    return curve;
}

Report eigen_solution_check(const LinearOde& ode, const Element& b, Side side,
                            const std::vector<double>& ts) {
    Report rep = solution_residual(ode, eigen_solution(b, ode.init, side), ts);
    bool a_commutes = true, c_commutes = true;
    for (const auto& e : ode.a.entries()) a_commutes = a_commutes && in_centralizer(e, b);
    for (const auto& e : ode.init) c_commutes = c_commutes && in_centralizer(e, b);
    rep.metrics["a_in_centralizer"] = a_commutes ? 1.0 : 0.0;
    rep.metrics["c_in_centralizer"] = c_commutes ? 1.0 : 0.0;
    if (!a_commutes && !c_commutes) rep.flag("conditions not met");
    return rep;
}

Report solution_residual(const LinearOde& ode, const SolutionCurve& curve,
                         const std::vector<double>& ts) {
    Report rep;
    for (double t : ts) {
        const double h = kFdStep * (1.0 + std::abs(t));
        State fwd = curve(t + h), bwd = curve(t - h), x = curve(t);
        State deriv;
        for (size_t i = 0; i < x.size(); ++i) deriv.push_back(scale(sub(fwd[i], bwd[i]), 0.5 / h));
        double r = state_dist(deriv, rhs(ode, x));
        if (r > rep.residual || !rep.witness) {
            rep.residual = std::max(rep.residual, r);
            rep.witness = nlohmann::json{{"t", t}, {"residual", r}};
        }
    }
    rep.metrics["residual"] = rep.residual;
    rep.verdict = rep.residual <= kFdTol;
    if (rep.verdict) rep.witness.reset();
    return rep;
}

namespace {

State axpy(const State& x, double s, const State& d) {
    State r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] += scale(d[i], s);
    return r;
}

}  // namespace

SolutionCurve rk4_integrate(const LinearOde& ode, double t_end, int steps) {
    if (steps < 1) throw Error(Errc::bad_argument, "rk4 needs at least one step");
    const double h = t_end / steps;
    auto xs = std::make_shared<std::vector<State>>();
    auto fs = std::make_shared<std::vector<State>>();
    State x = ode.init;
    xs->reserve(steps + 1);
    fs->reserve(steps + 1);
    for (int s = 0; s < steps; ++s) {
        State k1 = rhs(ode, x);
        State k2 = rhs(ode, axpy(x, h / 2, k1));
        State k3 = rhs(ode, axpy(x, h / 2, k2));
        State k4 = rhs(ode, axpy(x, h, k3));
        xs->push_back(x);
        fs->push_back(k1);
        for (size_t i = 0; i < x.size(); ++i)
            x[i] += scale(add(add(k1[i], scale(k2[i], 2.0)), add(scale(k3[i], 2.0), k4[i])), h / 6);
    }
    xs->push_back(x);
    fs->push_back(rhs(ode, x));

    SolutionCurve c;
    c.provenance = "rk4";
    // one step of extrapolation on either side
    c.t_min = std::min(0.0, t_end) - std::abs(h);
    c.t_max = std::max(0.0, t_end) + std::abs(h);
    c.eval = [xs, fs, h, steps](double t) -> State {
        double pos = t / h;
        int i = static_cast<int>(std::floor(pos));
        i = std::clamp(i, 0, steps - 1);
        const double u = pos - i;
        if (u == 0.0) return (*xs)[i];
        if (u == 1.0) return (*xs)[i + 1];
        // cubic Hermite with RHS slopes
        const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
        const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
        const State &x0 = (*xs)[i], &x1 = (*xs)[i + 1], &f0 = (*fs)[i], &f1 = (*fs)[i + 1];
        State r;
        for (size_t k = 0; k < x0.size(); ++k)
            r.push_back(add(add(scale(x0[k], h00), scale(f0[k], h10 * h)),
                            add(scale(x1[k], h01), scale(f1[k], h11 * h))));
        return r;
    };
    return c;
}

LinearOde elliptic_ode() {
    const AlgebraDesc& H = make_algebra(AlgebraTag::quaternion);
    BiMatrix a(H, {{Element(H), Element::one(H)}, {Element::scalar(H, -1.0), Element(H)}});
    return LinearOde(a, OdeForm::rc_left, {Element(H), Element::one(H)});
}

SolutionCurve elliptic_example_curve() {
    const AlgebraDesc& H = make_algebra(AlgebraTag::quaternion);
    const Element i = Element::basis(H, 1), j = Element::basis(H, 2);
    const Element k0 = scale(sub(j, i), 0.5);
    SolutionCurve c;
    c.provenance = "user";
    c.eval = [=](double t) {
        Element ei = exp_at(i, t), ej = exp_at(j, t);
        return State{mul(k0, sub(ei, ej)), mul(k0, sub(mul(i, ei), mul(j, ej)))};
    };
    return c;
}

std::array<Element, 3> elliptic_family_constants(const Element& C) {
    const AlgebraDesc& H = make_algebra(AlgebraTag::quaternion);
    if (C.algebra_ptr() != &H) throw Error(Errc::algebra_mismatch, "quaternion constant required");
    const Element one = Element::one(H), i = Element::basis(H, 1), j = Element::basis(H, 2),
                  k = Element::basis(H, 3);
    const Element jk = sub(j, k);
    Element c2 = scale(add(neg(jk), mul(C, add(add(neg(one), i), add(j, k)))), 0.5);
    Element c3 = scale(sub(jk, mul(C, add(add(one, i), add(j, k)))), 0.5);
    return {C, c2, c3};
}

SolutionCurve elliptic_family(const Element& C) {
    const AlgebraDesc& H = make_algebra(AlgebraTag::quaternion);
    const auto cs = elliptic_family_constants(C);
    const Element b[3] = {Element::basis(H, 1), Element::basis(H, 2), Element::basis(H, 3)};
    SolutionCurve c;
    c.provenance = "user";
    const AlgebraDesc* alg = &H;
    c.eval = [alg, cs, b](double t) {
        State x{Element(*alg), Element(*alg)};
        for (int m = 0; m < 3; ++m) {
            Element e = exp_at(b[m], t);
            x[0] += mul(cs[m], e);
            x[1] += mul(mul(cs[m], b[m]), e);
        }
        return x;
    };
    return c;
}

nlohmann::json to_json(const State& s) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : s) j.push_back(to_json(e));
    return j;
}

}  // namespace divcalc
