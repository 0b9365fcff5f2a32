#pragma once

#include <vector>

#include "divcalc/algebra.hpp"
#include "divcalc/biring.hpp"

namespace divcalc {

struct SeriesParams {
    double rel_tol = 1e-14;
    int max_terms = 64;
};

// Stops once the added term satisfies |term| <= rel_tol (1 + |partial|).
Element exp_el(const Element& x, const SeriesParams& p = {});
Element exp_at(const Element& a, double t, const SeriesParams& p = {});
Element sinh_el(const Element& x, const SeriesParams& p = {});
Element cosh_el(const Element& x, const SeriesParams& p = {});
Element sin_el(const Element& x, const SeriesParams& p = {});
Element cos_el(const Element& x, const SeriesParams& p = {});

// e[c_1..c_n]^x: sum over degrees N >= n of words with the c's placed in order-free
// slots among N gaps, x elsewhere, divided by N!. Double-stop rule on degrees.
Element quasiexp(const std::vector<Element>& cs, const Element& x, const SeriesParams& p = {});
// sum_n t^n/(n+1)! sum_m a^m c a^(n-m)
Element quasiexp_at(const Element& c, const Element& a, double t, const SeriesParams& p = {});
// d/dt of quasiexp_at: sum_n (n+1) t^n/(n+2)! sum_{m=0}^{n+1} a^m c a^(n+1-m)
Element quasiexp_at_dt(const Element& c, const Element& a, double t, const SeriesParams& p = {});

BiMatrix mexp_rc(const BiMatrix& x, const SeriesParams& p = {});
BiMatrix mexp_cr(const BiMatrix& x, const SeriesParams& p = {});

}  // namespace divcalc
