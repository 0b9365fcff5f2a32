#pragma once

#include <array>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "divcalc/error.hpp"

namespace divcalc {

enum class AlgebraTag { real, complex, quaternion, custom };

inline constexpr int kMaxDim = 8;

using Rng = std::mt19937_64;

// Structure constants: table[(i*dim + j)*dim + k] is the e_k coefficient of e_i e_j.
class AlgebraDesc {
public:
    struct Entry {
        int i, j, k;
        double c;
    };

    static std::shared_ptr<const AlgebraDesc> custom(std::string tag_name,
                                                     std::vector<std::string> basis_names,
                                                     std::vector<double> table);

    AlgebraTag tag() const { return tag_; }
    const std::string& tag_name() const { return tag_name_; }
    int dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return names_; }
    const std::vector<double>& table() const { return table_; }
    double constant(int i, int j, int k) const { return table_[(i * dim_ + j) * dim_ + k]; }
    // nonzero structure constants, used by mul
    const std::vector<Entry>& sparse() const { return sparse_; }

    AlgebraDesc(AlgebraTag tag, std::string tag_name, std::vector<std::string> names,
                std::vector<double> table);

private:
    AlgebraTag tag_;
    std::string tag_name_;
    int dim_;
    std::vector<std::string> names_;
    std::vector<double> table_;
    std::vector<Entry> sparse_;
};

const AlgebraDesc& make_algebra(AlgebraTag tag);
const AlgebraDesc& make_algebra(const std::string& tag);
AlgebraTag parse_tag(const std::string& tag);

// Max |(e_a e_b) e_c - e_a (e_b e_c)| over all basis triples.
double associativity_defect(const AlgebraDesc& alg);

class Element {
public:
    Element() = default;
    explicit Element(const AlgebraDesc& alg) : alg_(&alg) {}
    Element(const AlgebraDesc& alg, std::initializer_list<double> coeffs);
    Element(const AlgebraDesc& alg, const std::vector<double>& coeffs);

    static Element zero(const AlgebraDesc& alg) { return Element(alg); }
    static Element one(const AlgebraDesc& alg);
    static Element scalar(const AlgebraDesc& alg, double s);
    static Element basis(const AlgebraDesc& alg, int idx);

    const AlgebraDesc& algebra() const { return *alg_; }
    const AlgebraDesc* algebra_ptr() const { return alg_; }
    int dim() const { return alg_->dim(); }
    double operator[](int i) const { return c_[i]; }
    double& operator[](int i) { return c_[i]; }
    std::vector<double> coeffs() const { return {c_.begin(), c_.begin() + dim()}; }

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(double s);

private:
    const AlgebraDesc* alg_ = nullptr;
    std::array<double, kMaxDim> c_{};
};

void check_same(const Element& a, const Element& b);

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element scale(const Element& a, double s);
Element neg(const Element& a);
Element mul(const Element& a, const Element& b);
Element conj(const Element& a);
Element inv(const Element& a);
Element commutator(const Element& a, const Element& b);
double norm(const Element& a);
double dist(const Element& a, const Element& b);
bool approx_equal(const Element& a, const Element& b, double tol = 1e-9);
bool in_centralizer(const Element& c, const Element& b, double tol = 1e-9);

// a^n for n >= 0
Element power(const Element& a, int n);

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator-(const Element& a, const Element& b) { return sub(a, b); }
inline Element operator-(const Element& a) { return neg(a); }
inline Element operator*(const Element& a, const Element& b) { return mul(a, b); }
inline Element operator*(double s, const Element& a) { return scale(a, s); }
inline Element operator*(const Element& a, double s) { return scale(a, s); }

// Real dim x dim matrices, row-major.
using RealMatrix = std::vector<std::vector<double>>;
RealMatrix left_matrix(const Element& a);   // coeffs(a x) = L coeffs(x)
RealMatrix right_matrix(const Element& a);  // coeffs(x a) = R coeffs(x)
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);

Element random_element(const AlgebraDesc& alg, Rng& rng, double scale = 1.0);
Element random_element(const AlgebraDesc& alg, std::uint64_t seed, double scale = 1.0);
Element random_nonzero(const AlgebraDesc& alg, Rng& rng, double scale = 1.0, double min_norm = 0.1);

std::string to_text(const Element& a);
nlohmann::json to_json(const Element& a);
// Accepts {"algebra", "coeffs"} or a bare coefficient array (needs alg).
Element element_from_json(const nlohmann::json& j, const AlgebraDesc* alg = nullptr);

}  // namespace divcalc
