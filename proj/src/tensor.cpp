#include "divcalc/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace divcalc {

namespace {

void check_term(const AlgebraDesc& alg, const PureTerm& t, int order) {
    if (static_cast<int>(t.size()) != order + 1)
        throw Error(Errc::shape_mismatch, "term length differs from order+1");
    for (const auto& e : t)
        if (e.algebra_ptr() != &alg) throw Error(Errc::algebra_mismatch, "algebra mismatch");
}

}  // namespace

Tensor::Tensor(const AlgebraDesc& alg, int order, std::vector<PureTerm> terms)
    : alg_(&alg), order_(order) {
    for (auto& t : terms) add_term(std::move(t));
}

Tensor Tensor::monomial(const AlgebraDesc& alg, int order) {
    return Tensor(alg, order, {PureTerm(order + 1, Element::one(alg))});
}

Tensor Tensor::pure(PureTerm term) {
    if (term.empty()) throw Error(Errc::shape_mismatch, "empty term");
    const AlgebraDesc& alg = term[0].algebra();
    int order = static_cast<int>(term.size()) - 1;
    return Tensor(alg, order, {std::move(term)});
}

void Tensor::add_term(PureTerm term) {
    check_term(*alg_, term, order_);
    terms_.push_back(std::move(term));
}

SlotTensor SlotTensor::from_tensor(const Tensor& t) {
    SlotTensor s(t.algebra(), t.order(), 0);
    for (const auto& term : t.terms()) s.add_term({term, Labels(t.order(), 0)});
    return s;
}

SlotTensor SlotTensor::word(const Element& coeff, const Labels& labels, int arg_slots) {
    const AlgebraDesc& alg = coeff.algebra();
    SlotTensor s(alg, static_cast<int>(labels.size()), arg_slots);
    PureTerm c(labels.size() + 1, Element::one(alg));
    c[0] = coeff;
    s.add_term({std::move(c), labels});
    return s;
}

void SlotTensor::add_term(SlotTerm term) {
    check_term(*alg_, term.coeffs, gaps_);
    if (static_cast<int>(term.labels.size()) != gaps_)
        throw Error(Errc::shape_mismatch, "label count differs from gap count");
    std::vector<int> seen(args_ + 1, 0);
    for (int l : term.labels) {
        if (l < 0 || l > args_) throw Error(Errc::bad_argument, "label out of range");
        if (l > 0 && seen[l]++) throw Error(Errc::bad_argument, "argument label repeated");
    }
    for (int j = 1; j <= args_; ++j)
        if (!seen[j]) throw Error(Errc::bad_argument, "argument label missing");
    terms_.push_back(std::move(term));
}

std::vector<Labels> so_set(int k, int n) {
    if (k < 0 || n < 0 || k > n) throw Error(Errc::bad_argument, "so_set needs 0 <= k <= n");
    std::vector<Labels> out;
    // positions: k-combinations of 0..n-1 in lex order via a selection mask
    std::vector<int> pos(k);
    std::iota(pos.begin(), pos.end(), 0);
    for (;;) {
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            Labels l(n, 0);
            for (int p = 0; p < k; ++p) l[pos[p]] = perm[p];
            out.push_back(std::move(l));
        } while (std::next_permutation(perm.begin(), perm.end()));
        int i = k - 1;
        while (i >= 0 && pos[i] == n - k + i) --i;
        if (i < 0) break;
        ++pos[i];
        for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
    return out;
}

Tensor tensor_add(const Tensor& a, const Tensor& b) {
    if (&a.algebra() != &b.algebra()) throw Error(Errc::algebra_mismatch, "algebra mismatch");
    if (a.order() != b.order()) throw Error(Errc::shape_mismatch, "order mismatch");
    Tensor r = a;
    for (const auto& t : b.terms()) r.add_term(t);
    return r;
}

Tensor tensor_scale(const Tensor& a, const Element& s) {
    Tensor r(a.algebra(), a.order());
    for (auto t : a.terms()) {
        t[0] = mul(s, t[0]);
        r.add_term(std::move(t));
    }
    return r;
}

Tensor star_product(const Tensor& a, const Tensor& b) {
    if (&a.algebra() != &b.algebra()) throw Error(Errc::algebra_mismatch, "algebra mismatch");
    Tensor r(a.algebra(), a.order() + b.order());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            PureTerm t(ta.begin(), ta.end() - 1);
            t.push_back(mul(ta.back(), tb.front()));
            t.insert(t.end(), tb.begin() + 1, tb.end());
            r.add_term(std::move(t));
        }
    return r;
}

Element eval_power(const Tensor& t, const Element& x) {
    if (x.algebra_ptr() != &t.algebra()) throw Error(Errc::algebra_mismatch, "algebra mismatch");
    Element sum(t.algebra());
    for (const auto& term : t.terms()) {
        Element p = term[0];
        for (size_t g = 1; g < term.size(); ++g) p = mul(mul(p, x), term[g]);
        sum += p;
    }
    return sum;
}

SlotTensor monomial_derivative(const Tensor& t, int k) {
    if (k < 0) throw Error(Errc::bad_argument, "negative derivative order");
    SlotTensor s(t.algebra(), t.order(), k);
    if (k > t.order()) return s;
    const auto labels = so_set(k, t.order());
    for (const auto& term : t.terms())
        for (const auto& l : labels) s.add_term({term, l});
    return s;
}

SlotTensor slot_derivative(const SlotTensor& s) {
    SlotTensor r(s.algebra(), s.gaps(), s.arg_slots() + 1);
    for (const auto& term : s.terms())
        for (int p = 0; p < s.gaps(); ++p) {
            if (term.labels[p] != 0) continue;
            SlotTerm d = term;
            d.labels[p] = s.arg_slots() + 1;
            r.add_term(std::move(d));
        }
    return r;
}

SlotTensor slot_add(const SlotTensor& a, const SlotTensor& b) {
    if (&a.algebra() != &b.algebra()) throw Error(Errc::algebra_mismatch, "algebra mismatch");
    if (a.gaps() != b.gaps() || a.arg_slots() != b.arg_slots())
        throw Error(Errc::shape_mismatch, "slot tensor shapes differ");
    SlotTensor r = a;
    for (const auto& t : b.terms()) r.add_term(t);
    return r;
}

Element eval_args(const SlotTensor& s, const std::vector<Element>& args, const Element& x) {
    if (static_cast<int>(args.size()) != s.arg_slots())
        throw Error(Errc::arity_mismatch, "arity mismatch");
    if (x.algebra_ptr() != &s.algebra()) throw Error(Errc::algebra_mismatch, "algebra mismatch");
    Element sum(s.algebra());
    for (const auto& term : s.terms()) {
        Element p = term.coeffs[0];
        for (int g = 0; g < s.gaps(); ++g) {
            int l = term.labels[g];
            p = mul(mul(p, l == 0 ? x : args[l - 1]), term.coeffs[g + 1]);
        }
        sum += p;
    }
    return sum;
}

Element eval_args(const std::vector<SlotTensor>& s, const std::vector<Element>& args,
                  const Element& x) {
    Element sum(x.algebra());
    for (const auto& c : s) sum += eval_args(c, args, x);
    return sum;
}

TensorPolynomial::TensorPolynomial(const AlgebraDesc& alg, std::vector<Tensor> components)
    : alg_(&alg) {
    for (const auto& c : components) add(c);
}

void TensorPolynomial::add(const Tensor& t) {
    if (&t.algebra() != alg_) throw Error(Errc::algebra_mismatch, "algebra mismatch");
    auto it = std::lower_bound(comps_.begin(), comps_.end(), t.order(),
                               [](const Tensor& c, int o) { return c.order() < o; });
    if (it != comps_.end() && it->order() == t.order())
        *it = tensor_add(*it, t);
    else
        comps_.insert(it, t);
}

Element poly_eval(const TensorPolynomial& p, const Element& x) {
    Element sum(p.algebra());
    for (const auto& c : p.components()) sum += eval_power(c, x);
    return sum;
}

std::vector<SlotTensor> poly_derivative(const TensorPolynomial& p, int k) {
    std::vector<SlotTensor> out;
    for (const auto& c : p.components())
        if (c.order() >= k) out.push_back(monomial_derivative(c, k));
    return out;
}

TensorPolynomial poly_product(const TensorPolynomial& a, const TensorPolynomial& b) {
    TensorPolynomial r(a.algebra());
    for (const auto& ca : a.components())
        for (const auto& cb : b.components()) r.add(star_product(ca, cb));
    return r;
}

namespace {

// Probe tuples of `width` elements: all basis tuples if allowed, then seeded random ones.
std::vector<std::vector<Element>> probe_tuples(const AlgebraDesc& alg, int width, int order) {
    std::vector<std::vector<Element>> out;
    const int d = alg.dim();
    if (d <= 4 && order <= 3) {
        int total = 1;
        for (int i = 0; i < width; ++i) total *= d;
        for (int code = 0; code < total; ++code) {
            std::vector<Element> tup;
            int c = code;
            for (int i = 0; i < width; ++i) {
                tup.push_back(Element::basis(alg, c % d));
                c /= d;
            }
            out.push_back(std::move(tup));
        }
    }
    Rng rng(kProbeSeed);
    for (int r = 0; r < 20; ++r) {
        std::vector<Element> tup;
        for (int i = 0; i < width; ++i) tup.push_back(random_element(alg, rng, 1.0));
        out.push_back(std::move(tup));
    }
    return out;
}

}  // namespace

bool tensors_equal(const Tensor& a, const Tensor& b, double tol) {
    if (&a.algebra() != &b.algebra()) return false;
    for (const auto& tup : probe_tuples(a.algebra(), 1, std::max(a.order(), b.order())))
        if (dist(eval_power(a, tup[0]), eval_power(b, tup[0])) > tol) return false;
    return true;
}

double slot_tensor_distance(const SlotTensor& a, const SlotTensor& b) {
    if (&a.algebra() != &b.algebra()) throw Error(Errc::algebra_mismatch, "algebra mismatch");
    if (a.arg_slots() != b.arg_slots()) throw Error(Errc::arity_mismatch, "arity mismatch");
    const int k = a.arg_slots();
    double worst = 0;
    for (const auto& tup : probe_tuples(a.algebra(), k + 1, std::max(a.gaps(), b.gaps()))) {
        std::vector<Element> args(tup.begin(), tup.begin() + k);
        worst = std::max(worst, dist(eval_args(a, args, tup[k]), eval_args(b, args, tup[k])));
    }
    return worst;
}

bool slot_tensors_equal(const SlotTensor& a, const SlotTensor& b, double tol) {
    return slot_tensor_distance(a, b) <= tol;
}

nlohmann::json to_json(const Tensor& t) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : t.terms()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& e : term) row.push_back(to_json(e));
        terms.push_back(row);
    }
    return {{"algebra", t.algebra().tag_name()}, {"order", t.order()}, {"terms", terms}};
}

Tensor tensor_from_json(const nlohmann::json& j, const AlgebraDesc* alg) {
    try {
        if (j.contains("algebra")) alg = &make_algebra(j.at("algebra").get<std::string>());
        const auto& terms = j.at("terms");
        if (!alg && !terms.empty() && !terms[0].empty())
            alg = &element_from_json(terms[0][0]).algebra();
        if (!alg) throw Error(Errc::parse_error, "tensor fixture without algebra");
        Tensor t(*alg, j.at("order").get<int>());
        for (const auto& row : terms) {
            PureTerm term;
            for (const auto& e : row) term.push_back(element_from_json(e, alg));
            t.add_term(std::move(term));
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
}

}  // namespace divcalc
