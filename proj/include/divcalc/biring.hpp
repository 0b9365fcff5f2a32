#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "divcalc/algebra.hpp"
#include "divcalc/report.hpp"

namespace divcalc {

class BiMatrix {
public:
    BiMatrix(const AlgebraDesc& alg, size_t rows, size_t cols);
    BiMatrix(const AlgebraDesc& alg, const std::vector<std::vector<Element>>& rows);

    static BiMatrix identity(const AlgebraDesc& alg, size_t n);
    static BiMatrix column(const std::vector<Element>& v);
    static BiMatrix row(const std::vector<Element>& v);
    static BiMatrix random(const AlgebraDesc& alg, size_t rows, size_t cols, Rng& rng,
                           double scale = 1.0);

    const AlgebraDesc& algebra() const { return *alg_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    const Element& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    Element& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    // entries in row-major order; for vectors this is the vector
    const std::vector<Element>& entries() const { return data_; }

    double max_norm() const;

private:
    const AlgebraDesc* alg_;
    size_t rows_, cols_;
    std::vector<Element> data_;
};

struct MinorSelector {
    std::vector<size_t> rows;
    std::vector<size_t> cols;
};

BiMatrix minor(const BiMatrix& a, const MinorSelector& sel);
// a with row i and column j removed
BiMatrix delete_row_col(const BiMatrix& a, size_t i, size_t j);

BiMatrix rc_mul(const BiMatrix& a, const BiMatrix& b);
BiMatrix cr_mul(const BiMatrix& a, const BiMatrix& b);
BiMatrix transpose(const BiMatrix& a);
BiMatrix add(const BiMatrix& a, const BiMatrix& b);
BiMatrix sub(const BiMatrix& a, const BiMatrix& b);
BiMatrix scale(const BiMatrix& a, double s);
BiMatrix left_scale(const Element& s, const BiMatrix& a);   // entrywise s a(r,c)
BiMatrix right_scale(const BiMatrix& a, const Element& s);  // entrywise a(r,c) s
BiMatrix hadamard_inv(const BiMatrix& a);
BiMatrix rc_pow(const BiMatrix& a, int n);
BiMatrix cr_pow(const BiMatrix& a, int n);
double max_dist(const BiMatrix& a, const BiMatrix& b);

// Pivot tolerance factor: pivot p is zero when |p| <= kPivotRel * (1 + max entry norm).
inline constexpr double kPivotRel = 1e-10;

Element quasidet_rc(const BiMatrix& a, size_t i, size_t j);
Element quasidet_cr(const BiMatrix& a, size_t i, size_t j);
BiMatrix rc_inv(const BiMatrix& a);
BiMatrix cr_inv(const BiMatrix& a);
// all n^2 quasideterminants, entry (i, j) = quasidet_rc(a, i, j)
BiMatrix quasidet_matrix_rc(const BiMatrix& a);
bool rc_singular(const BiMatrix& a);

// Standard 2x2 closed forms, q(i, j) for 0-based i, j.
Element quasidet_2x2_formula(const BiMatrix& a, size_t i, size_t j);
BiMatrix inverse_2x2_formula(const BiMatrix& a);

std::vector<Element> solve_rc(const BiMatrix& a, const std::vector<Element>& b);

struct RankResult {
    size_t rank = 0;
    MinorSelector major;
    // largest |quasidet| over bordered (rank+1) minors at the border cell
    double max_border_quasidet = 0.0;
    // for each row outside the major minor: coefficients lambda over all rows
    // (lambda_p = -1) with lambda rc a = 0
    std::vector<std::vector<Element>> dependencies;
};

RankResult rc_rank(const BiMatrix& a);

Report verify_eigen_rc(const BiMatrix& a, const Element& b, const std::vector<Element>& v);
std::array<Element, 2> eigen_offdiag(const Element& f);
Element elliptic_eigen_sample(std::uint64_t seed);

nlohmann::json to_json(const BiMatrix& a);
BiMatrix bimatrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MinorSelector& s);

}  // namespace divcalc
