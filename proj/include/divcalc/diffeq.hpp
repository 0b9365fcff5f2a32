#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "divcalc/biring.hpp"
#include "divcalc/report.hpp"
#include "divcalc/series.hpp"
#include "divcalc/tensor.hpp"

namespace divcalc {

// Finite-difference and verdict tolerances.
inline constexpr double kFdStep = 1e-5;
inline constexpr double kFdTol = 1e-6;
inline constexpr double kIntegrableTol = 1e-9;
inline constexpr double kWitnessMin = 1e-3;
inline constexpr double kExactTol = 1e-5;
inline constexpr int kDefaultProbes = 32;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

// g(x) o h as a sum of SlotTensors with one argument slot each.
using FormPoly = std::vector<SlotTensor>;
using ElementFn = std::function<Element(const Element&)>;
using Potential = std::function<Element(const Element&, const Element&)>;

Element eval_form(const FormPoly& g, const Element& x, const Element& h);

// dg o (h1, h2) - dg o (h2, h1) at seeded random probes.
Report integrability_check(const FormPoly& g, int probes = kDefaultProbes,
                           std::uint64_t seed = kDefaultSeed);

// max over points x dirs of |FD derivative of y along h - g(x) o h|
Report antiderivative_residual(const ElementFn& y, const FormPoly& g,
                               const std::vector<Element>& points,
                               const std::vector<Element>& dirs);
std::vector<Element> sample_elements(const AlgebraDesc& alg, int count, std::uint64_t seed,
                                     double scale = 1.0);

// M(x, y) o d, linear in d.
class BiForm {
public:
    using Fn = std::function<Element(const Element& x, const Element& y, const Element& d)>;

    // Throws bad_argument if fn fails a seeded linearity check in d.
    BiForm(const AlgebraDesc& alg, Fn fn);

    // Sum of words over factors x, y, d, real numbers and basis names, e.g.
    // "3*x*x*d + d*y". Every word must contain d exactly once.
    static BiForm parse(const AlgebraDesc& alg, const std::string& text);

    const AlgebraDesc& algebra() const { return *alg_; }
    Element operator()(const Element& x, const Element& y, const Element& d) const {
        return fn_(x, y, d);
    }

private:
    const AlgebraDesc* alg_;
    Fn fn_;
};

Report exactness_check(const BiForm& M, const BiForm& N, int probes = kDefaultProbes,
                       std::uint64_t seed = kDefaultSeed);
Report implicit_solution_check(const Potential& u, const BiForm& M, const BiForm& N,
                               int probes = kDefaultProbes, std::uint64_t seed = kDefaultSeed);

enum class OdeForm { rc_left, cr_right, cr_left, rc_right };

const char* form_name(OdeForm f);
OdeForm parse_form(const std::string& s);
inline constexpr OdeForm kAllForms[] = {OdeForm::rc_left, OdeForm::cr_right, OdeForm::cr_left,
                                        OdeForm::rc_right};

struct LinearOde {
    LinearOde(BiMatrix a, OdeForm form, std::vector<Element> init);

    BiMatrix a;
    OdeForm form;
    std::vector<Element> init;

    size_t size() const { return init.size(); }
};

using State = std::vector<Element>;

// Right-hand side of the system at state x.
State rhs(const LinearOde& ode, const State& x);

struct SolutionCurve {
    std::function<State(double)> eval;
    std::string provenance;  // closed-form | eigen | rk4 | user
    double t_min = -1e300;
    double t_max = 1e300;

    State operator()(double t) const;
};

SolutionCurve closed_form_solution(const LinearOde& ode, const SeriesParams& p = {});
std::vector<BiMatrix> successive_powers(const LinearOde& ode, int n);

enum class Side { left, right };
// t -> e^{bt} c^i (left) or c^i e^{bt} (right)
SolutionCurve eigen_solution(const Element& b, const State& c, Side side,
                             const SeriesParams& p = {});
// Residual of eigen_solution(b, ode.init, side) plus the centralizer hypotheses.
Report eigen_solution_check(const LinearOde& ode, const Element& b, Side side,
                            const std::vector<double>& ts);

Report solution_residual(const LinearOde& ode, const SolutionCurve& curve,
                         const std::vector<double>& ts);
SolutionCurve rk4_integrate(const LinearOde& ode, double t_end, int steps);

double state_dist(const State& a, const State& b);

// x1' = x2, x2' = -x1 over the quaternions, x(0) = (0, 1)
LinearOde elliptic_ode();
// x1 = 1/2(-i+j)(e^{it} - e^{jt}), x2 = 1/2(-i+j)(i e^{it} - j e^{jt})
SolutionCurve elliptic_example_curve();
// three-exponential family with C1 = C
SolutionCurve elliptic_family(const Element& C);
std::array<Element, 3> elliptic_family_constants(const Element& C);

nlohmann::json to_json(const State& s);

}  // namespace divcalc
