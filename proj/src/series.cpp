#include "divcalc/series.hpp"

#include <cmath>

namespace divcalc {

namespace {

[[noreturn]] void budget() { throw Error(Errc::series_budget, "series budget exceeded"); }

bool small(double term, double partial, const SeriesParams& p) {
    return term <= p.rel_tol * (1.0 + partial);
}

// sum_{n >= first} x^(first + step*n) * coef_n where coef follows the factorial
// recursion of exp (step 1) or of the odd/even halves (step 2); sign flips for trig.
Element power_series(const Element& x, int first, int step, double sign, const SeriesParams& p) {
    const AlgebraDesc& alg = x.algebra();
    Element term = first == 0 ? Element::one(alg) : x;
    Element sum = term;
    Element x_step = step == 1 ? x : mul(x, x);
    int deg = first;
    for (int n = 1; n < p.max_terms; ++n) {
        double denom = 1.0;
        for (int s = 1; s <= step; ++s) denom *= deg + s;
        deg += step;
        term = scale(mul(term, x_step), sign / denom);
        sum += term;
        if (small(norm(term), norm(sum), p)) return sum;
    }
    budget();
}

}  // namespace

Element exp_el(const Element& x, const SeriesParams& p) { return power_series(x, 0, 1, 1.0, p); }

Element exp_at(const Element& a, double t, const SeriesParams& p) {
    const AlgebraDesc& alg = a.algebra();
    Element ap = Element::one(alg);
    Element sum = ap;
    double coef = 1.0;
    for (int n = 1; n < p.max_terms; ++n) {
        ap = mul(ap, a);
        coef *= t / n;
        Element term = scale(ap, coef);
        sum += term;
        if (small(norm(term), norm(sum), p)) return sum;
    }
    budget();
}

Element sinh_el(const Element& x, const SeriesParams& p) { return power_series(x, 1, 2, 1.0, p); }
Element cosh_el(const Element& x, const SeriesParams& p) { return power_series(x, 0, 2, 1.0, p); }
Element sin_el(const Element& x, const SeriesParams& p) { return power_series(x, 1, 2, -1.0, p); }
Element cos_el(const Element& x, const SeriesParams& p) { return power_series(x, 0, 2, -1.0, p); }

Element quasiexp(const std::vector<Element>& cs, const Element& x, const SeriesParams& p) {
    if (cs.empty()) throw Error(Errc::bad_argument, "quasiexp needs at least one argument");
    const size_t n = cs.size();
    if (n > 20) throw Error(Errc::bad_argument, "too many quasiexp arguments");
    for (const auto& c : cs) check_same(c, x);
    const AlgebraDesc& alg = x.algebra();
    const size_t full = (size_t{1} << n) - 1;
    // q[mask]: sum of degree-N words using exactly the args in mask (in any slot order),
    // x in the other gaps, already divided by N!
    std::vector<Element> q(full + 1, Element(alg));
    q[0] = Element::one(alg);
    Element sum(alg);
    int quiet = 0;
    for (int N = 1; N < p.max_terms + static_cast<int>(n); ++N) {
        std::vector<Element> next(full + 1, Element(alg));
        for (size_t mask = 0; mask <= full; ++mask) {
            Element v = mul(q[mask], x);
            for (size_t j = 0; j < n; ++j)
                if (mask & (size_t{1} << j)) v += mul(q[mask & ~(size_t{1} << j)], cs[j]);
            next[mask] = scale(v, 1.0 / N);
        }
        q = std::move(next);
        if (N < static_cast<int>(n)) continue;
        sum += q[full];
        if (small(norm(q[full]), norm(sum), p)) {
            if (++quiet == 2) return sum;
        } else {
            quiet = 0;
        }
    }
    budget();
}

namespace {

// sum_n w_n t^n/(n+shift)! S_{n+shift-1}, S_m = sum_{l=0}^m a^l c a^(m-l),
// with w_n = n+1 for the derivative series (shift 2) and 1 otherwise
Element quasi_at_series(const Element& c, const Element& a, double t, int shift,
                        const SeriesParams& p) {
    check_same(c, a);
    const AlgebraDesc& alg = a.algebra();
    Element s = c;  // S_0
    Element apow = Element::one(alg);
    for (int m = 1; m < shift; ++m) {
        apow = mul(apow, a);
        s = add(mul(s, a), mul(apow, c));
    }
    double coef = 1.0;
    for (int m = 2; m <= shift; ++m) coef /= m;
    Element sum = scale(s, coef);
    int quiet = 0;
    for (int n = 1; n < p.max_terms; ++n) {
        apow = mul(apow, a);
        s = add(mul(s, a), mul(apow, c));
        coef *= t / (n + shift);
        Element term = scale(s, shift == 2 ? coef * (n + 1) : coef);
        sum += term;
        if (small(norm(term), norm(sum), p)) {
            if (++quiet == 2) return sum;
        } else {
            quiet = 0;
        }
    }
    budget();
}

}  // namespace

Element quasiexp_at(const Element& c, const Element& a, double t, const SeriesParams& p) {
    return quasi_at_series(c, a, t, 1, p);
}

Element quasiexp_at_dt(const Element& c, const Element& a, double t, const SeriesParams& p) {
    return quasi_at_series(c, a, t, 2, p);
}

namespace {

template <class Prod>
BiMatrix matrix_exp(const BiMatrix& x, const SeriesParams& p, Prod prod) {
    if (!x.square()) throw Error(Errc::shape_mismatch, "square matrix required");
    BiMatrix term = BiMatrix::identity(x.algebra(), x.rows());
    BiMatrix sum = term;
    for (int n = 1; n < p.max_terms; ++n) {
        term = scale(prod(term, x), 1.0 / n);
        sum = add(sum, term);
        if (small(term.max_norm(), sum.max_norm(), p)) return sum;
    }
    budget();
}

}  // namespace

BiMatrix mexp_rc(const BiMatrix& x, const SeriesParams& p) {
    return matrix_exp(x, p, [](const BiMatrix& a, const BiMatrix& b) { return rc_mul(a, b); });
}

BiMatrix mexp_cr(const BiMatrix& x, const SeriesParams& p) {
    return matrix_exp(x, p, [](const BiMatrix& a, const BiMatrix& b) { return cr_mul(a, b); });
}

}  // namespace divcalc
