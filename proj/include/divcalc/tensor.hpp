#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "divcalc/algebra.hpp"

namespace divcalc {

using PureTerm = std::vector<Element>;  // [a_0, ..., a_n]

// Sum of pure terms a_0 (x) ... (x) a_n, acting on x as a_0 x a_1 x ... x a_n.
class Tensor {
public:
    Tensor(const AlgebraDesc& alg, int order) : alg_(&alg), order_(order) {}
    Tensor(const AlgebraDesc& alg, int order, std::vector<PureTerm> terms);

    // single term with unit coefficients (x^order)
    static Tensor monomial(const AlgebraDesc& alg, int order);
    static Tensor pure(PureTerm term);

    const AlgebraDesc& algebra() const { return *alg_; }
    int order() const { return order_; }
    const std::vector<PureTerm>& terms() const { return terms_; }
    void add_term(PureTerm term);

private:
    const AlgebraDesc* alg_;
    int order_;
    std::vector<PureTerm> terms_;
};

// Gap labels: 0 is X, j >= 1 is Arg(j).
using Labels = std::vector<int>;

struct SlotTerm {
    PureTerm coeffs;
    Labels labels;
};

class SlotTensor {
public:
    SlotTensor(const AlgebraDesc& alg, int gaps, int arg_slots)
        : alg_(&alg), gaps_(gaps), args_(arg_slots) {}

    // Tensor as a SlotTensor with no argument slots.
    static SlotTensor from_tensor(const Tensor& t);
    // coeff * word, where word is the label sequence and interior coefficients are 1.
    static SlotTensor word(const Element& coeff, const Labels& labels, int arg_slots);

    const AlgebraDesc& algebra() const { return *alg_; }
    int gaps() const { return gaps_; }
    int arg_slots() const { return args_; }
    int x_gaps() const { return gaps_ - args_; }
    const std::vector<SlotTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(SlotTerm term);

private:
    const AlgebraDesc* alg_;
    int gaps_;
    int args_;
    std::vector<SlotTerm> terms_;
};

// Gap assignments of Arg(1..k) among n gaps; lex order of (positions, permutation).
std::vector<Labels> so_set(int k, int n);

Tensor tensor_add(const Tensor& a, const Tensor& b);
Tensor tensor_scale(const Tensor& a, const Element& s);  // left multiply a_0 by s
Tensor star_product(const Tensor& a, const Tensor& b);
Element eval_power(const Tensor& t, const Element& x);

SlotTensor monomial_derivative(const Tensor& t, int k);
// Differentiate the X gaps once more; new slot is Arg(k+1).
SlotTensor slot_derivative(const SlotTensor& s);
SlotTensor slot_add(const SlotTensor& a, const SlotTensor& b);
Element eval_args(const SlotTensor& s, const std::vector<Element>& args, const Element& x);

// a_0 + a_1 o x + ... with unique ascending orders
class TensorPolynomial {
public:
    explicit TensorPolynomial(const AlgebraDesc& alg) : alg_(&alg) {}
    TensorPolynomial(const AlgebraDesc& alg, std::vector<Tensor> components);

    const AlgebraDesc& algebra() const { return *alg_; }
    const std::vector<Tensor>& components() const { return comps_; }
    // merges into an existing component of the same order
    void add(const Tensor& t);

private:
    const AlgebraDesc* alg_;
    std::vector<Tensor> comps_;
};

Element poly_eval(const TensorPolynomial& p, const Element& x);
std::vector<SlotTensor> poly_derivative(const TensorPolynomial& p, int k);
TensorPolynomial poly_product(const TensorPolynomial& a, const TensorPolynomial& b);
Element eval_args(const std::vector<SlotTensor>& s, const std::vector<Element>& args,
                  const Element& x);

// Extensional equality over the probe set (basis tuples for dim <= 4 and order <= 3,
// plus 20 seeded random tuples).
inline constexpr std::uint64_t kProbeSeed = 0x5eed5eedULL;
bool tensors_equal(const Tensor& a, const Tensor& b, double tol = 1e-9);
bool slot_tensors_equal(const SlotTensor& a, const SlotTensor& b, double tol = 1e-9);
double slot_tensor_distance(const SlotTensor& a, const SlotTensor& b);

nlohmann::json to_json(const Tensor& t);
Tensor tensor_from_json(const nlohmann::json& j, const AlgebraDesc* alg = nullptr);

}  // namespace divcalc
