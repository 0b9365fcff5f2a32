#include "divcalc/biring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace divcalc {

BiMatrix::BiMatrix(const AlgebraDesc& alg, size_t rows, size_t cols)
    : alg_(&alg), rows_(rows), cols_(cols), data_(rows * cols, Element(alg)) {}

BiMatrix::BiMatrix(const AlgebraDesc& alg, const std::vector<std::vector<Element>>& rows)
    : alg_(&alg), rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(Errc::shape_mismatch, "ragged matrix rows");
        for (const auto& e : r) {
            if (e.algebra_ptr() != alg_) throw Error(Errc::algebra_mismatch, "algebra mismatch");
            data_.push_back(e);
        }
    }
}

BiMatrix BiMatrix::identity(const AlgebraDesc& alg, size_t n) {
    BiMatrix m(alg, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Element::one(alg);
    return m;
}

BiMatrix BiMatrix::column(const std::vector<Element>& v) {
    if (v.empty()) throw Error(Errc::shape_mismatch, "empty vector");
    BiMatrix m(v[0].algebra(), v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

BiMatrix BiMatrix::row(const std::vector<Element>& v) { return transpose(column(v)); }

BiMatrix BiMatrix::random(const AlgebraDesc& alg, size_t rows, size_t cols, Rng& rng,
                          double scale) {
    BiMatrix m(alg, rows, cols);
    for (auto& e : m.data_) e = random_element(alg, rng, scale);
    return m;
}

double BiMatrix::max_norm() const {
    double m = 0;
    for (const auto& e : data_) m = std::max(m, norm(e));
    return m;
}

BiMatrix minor(const BiMatrix& a, const MinorSelector& sel) {
    BiMatrix m(a.algebra(), sel.rows.size(), sel.cols.size());
    for (size_t r = 0; r < sel.rows.size(); ++r)
        for (size_t c = 0; c < sel.cols.size(); ++c) {
            if (sel.rows[r] >= a.rows() || sel.cols[c] >= a.cols())
                throw Error(Errc::bad_argument, "minor index out of range");
            m(r, c) = a(sel.rows[r], sel.cols[c]);
        }
    return m;
}

BiMatrix delete_row_col(const BiMatrix& a, size_t i, size_t j) {
    MinorSelector s;
    for (size_t r = 0; r < a.rows(); ++r)
        if (r != i) s.rows.push_back(r);
    for (size_t c = 0; c < a.cols(); ++c)
        if (c != j) s.cols.push_back(c);
    return minor(a, s);
}

namespace {

void same_alg(const BiMatrix& a, const BiMatrix& b) {
    if (&a.algebra() != &b.algebra()) throw Error(Errc::algebra_mismatch, "algebra mismatch");
}

}  // namespace

BiMatrix rc_mul(const BiMatrix& a, const BiMatrix& b) {
    same_alg(a, b);
    if (a.cols() != b.rows()) throw Error(Errc::shape_mismatch, "shape mismatch");
    BiMatrix r(a.algebra(), a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) {
            Element s(a.algebra());
            for (size_t k = 0; k < a.cols(); ++k) s += mul(a(i, k), b(k, j));
            r(i, j) = s;
        }
    return r;
}

// (a cr b)(r, c) = sum_k a(k, c) b(r, k)
BiMatrix cr_mul(const BiMatrix& a, const BiMatrix& b) {
    same_alg(a, b);
    if (a.rows() != b.cols()) throw Error(Errc::shape_mismatch, "shape mismatch");
    BiMatrix r(a.algebra(), b.rows(), a.cols());
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            Element s(a.algebra());
            for (size_t k = 0; k < a.rows(); ++k) s += mul(a(k, j), b(i, k));
            r(i, j) = s;
        }
    return r;
}

BiMatrix transpose(const BiMatrix& a) {
    BiMatrix t(a.algebra(), a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

BiMatrix add(const BiMatrix& a, const BiMatrix& b) {
    same_alg(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::shape_mismatch, "shape mismatch");
    BiMatrix r = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
    return r;
}

BiMatrix sub(const BiMatrix& a, const BiMatrix& b) { return add(a, scale(b, -1.0)); }

BiMatrix scale(const BiMatrix& a, double s) {
    BiMatrix r = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) *= s;
    return r;
}

BiMatrix left_scale(const Element& s, const BiMatrix& a) {
    BiMatrix r = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = mul(s, a(i, j));
    return r;
}

BiMatrix right_scale(const BiMatrix& a, const Element& s) {
    BiMatrix r = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = mul(a(i, j), s);
    return r;
}

BiMatrix hadamard_inv(const BiMatrix& a) {
    BiMatrix h(a.algebra(), a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (norm(a(i, j)) == 0.0)
                throw Error(Errc::hadamard_undefined, "Hadamard inverse undefined");
            h(j, i) = inv(a(i, j));
        }
    return h;
}

BiMatrix rc_pow(const BiMatrix& a, int n) {
    if (!a.square()) throw Error(Errc::shape_mismatch, "power of non-square matrix");
    if (n < 0) throw Error(Errc::bad_argument, "negative power");
    BiMatrix r = BiMatrix::identity(a.algebra(), a.rows());
    for (int i = 0; i < n; ++i) r = rc_mul(r, a);
    return r;
}

BiMatrix cr_pow(const BiMatrix& a, int n) {
    if (!a.square()) throw Error(Errc::shape_mismatch, "power of non-square matrix");
    if (n < 0) throw Error(Errc::bad_argument, "negative power");
    BiMatrix r = BiMatrix::identity(a.algebra(), a.rows());
    for (int i = 0; i < n; ++i) r = cr_mul(r, a);
    return r;
}

double max_dist(const BiMatrix& a, const BiMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::shape_mismatch, "shape mismatch");
    double m = 0;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m = std::max(m, dist(a(i, j), b(i, j)));
    return m;
}

namespace {

using Mask = std::uint64_t;

std::vector<size_t> indices(Mask m) {
    std::vector<size_t> out;
    for (size_t i = 0; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

// Inverses of square submatrices of one matrix by the quasideterminant recursion:
// inv(j, i) = (a(i,j) - a(i,T) inv(a(S,T)) a(S,j))^-1, S/T the other rows/cols.
// An inverse entry is 0 exactly when its inner minor is singular.
class InverseEngine {
public:
    InverseEngine(const BiMatrix& a, double pivot_scale)
        : a_(a), tol_(kPivotRel * (1.0 + pivot_scale)) {
        if (a.rows() > 64 || a.cols() > 64) throw Error(Errc::bad_argument, "matrix too large");
    }

    const std::optional<BiMatrix>& inverse(Mask rows, Mask cols) {
        auto key = std::make_pair(rows, cols);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto res = compute(rows, cols);
        return memo_.emplace(key, std::move(res)).first->second;
    }

    // a(i,j) - a(i, T) inv(S, T) a(S, j)
    Element border(const BiMatrix& minv, size_t i, size_t j, const std::vector<size_t>& S,
                   const std::vector<size_t>& T) const {
        Element s = a_(i, j);
        for (size_t p = 0; p < T.size(); ++p) {
            Element acc(a_.algebra());
            for (size_t q = 0; q < S.size(); ++q) acc += mul(minv(p, q), a_(S[q], j));
            s -= mul(a_(i, T[p]), acc);
        }
        return s;
    }

    double tol() const { return tol_; }

private:
    std::optional<BiMatrix> compute(Mask rows, Mask cols) {
        const auto R = indices(rows), C = indices(cols);
        const size_t k = R.size();
        const AlgebraDesc& alg = a_.algebra();
        if (k == 1) {
            const Element& e = a_(R[0], C[0]);
            if (norm(e) <= tol_) return std::nullopt;
            BiMatrix m(alg, 1, 1);
            m(0, 0) = inv(e);
            return m;
        }
        BiMatrix res(alg, k, k);
        for (size_t li = 0; li < k; ++li)
            for (size_t lj = 0; lj < k; ++lj) {
                const Mask r2 = rows & ~(Mask{1} << R[li]);
                const Mask c2 = cols & ~(Mask{1} << C[lj]);
                const auto& inner = inverse(r2, c2);
                if (!inner) continue;  // entry (lj, li) of the inverse is zero
                Element q = border(*inner, R[li], C[lj], indices(r2), indices(c2));
                if (norm(q) <= tol_) return std::nullopt;
                res(lj, li) = inv(q);
            }
        BiMatrix sub(alg, k, k);
        for (size_t r = 0; r < k; ++r)
            for (size_t c = 0; c < k; ++c) sub(r, c) = a_(R[r], C[c]);
        double bound = 1e-8 * (1.0 + sub.max_norm() * res.max_norm() * static_cast<double>(k));
        if (max_dist(rc_mul(sub, res), BiMatrix::identity(alg, k)) > bound) return std::nullopt;
        return res;
    }

    const BiMatrix& a_;
    double tol_;
    std::map<std::pair<Mask, Mask>, std::optional<BiMatrix>> memo_;
};

Mask full_mask(size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

Mask mask_of(const std::vector<size_t>& idx) {
    Mask m = 0;
    for (size_t i : idx) m |= Mask{1} << i;
    return m;
}

void require_square(const BiMatrix& a) {
    if (!a.square() || a.rows() == 0) throw Error(Errc::shape_mismatch, "square matrix required");
}

}  // namespace

Element quasidet_rc(const BiMatrix& a, size_t i, size_t j) {
    require_square(a);
    const size_t n = a.rows();
    if (i >= n || j >= n) throw Error(Errc::bad_argument, "index out of range");
    if (n == 1) return a(0, 0);
    InverseEngine eng(a, a.max_norm());
    const Mask r2 = full_mask(n) & ~(Mask{1} << i), c2 = full_mask(n) & ~(Mask{1} << j);
    const auto& inner = eng.inverse(r2, c2);
    if (!inner) throw Error(Errc::quasidet_undefined, "quasideterminant undefined");
    return eng.border(*inner, i, j, indices(r2), indices(c2));
}

// Dual form: b(r,c) - (b(~r, c) cr cr_inv(b without r, c)) cr b(r, ~c)
Element quasidet_cr(const BiMatrix& b, size_t r, size_t c) {
    require_square(b);
    const size_t n = b.rows();
    if (r >= n || c >= n) throw Error(Errc::bad_argument, "index out of range");
    if (n == 1) return b(0, 0);
    std::vector<Element> col, row;
    for (size_t k = 0; k < n; ++k) {
        if (k != r) col.push_back(b(k, c));
        if (k != c) row.push_back(b(r, k));
    }
    BiMatrix inner_inv(b.algebra(), n - 1, n - 1);
    try {
        inner_inv = cr_inv(delete_row_col(b, r, c));
    } catch (const Error& e) {
        if (e.code() == Errc::rc_singular)
            throw Error(Errc::quasidet_undefined, "quasideterminant undefined");
        throw;
    }
    BiMatrix t = cr_mul(cr_mul(BiMatrix::column(col), inner_inv), BiMatrix::row(row));
    return sub(b(r, c), t(0, 0));
}

BiMatrix rc_inv(const BiMatrix& a) {
    require_square(a);
    InverseEngine eng(a, a.max_norm());
    const auto& r = eng.inverse(full_mask(a.rows()), full_mask(a.cols()));
    if (!r) throw Error(Errc::rc_singular, "rc-singular");
    return *r;
}

BiMatrix cr_inv(const BiMatrix& a) { return transpose(rc_inv(transpose(a))); }

BiMatrix quasidet_matrix_rc(const BiMatrix& a) {
    require_square(a);
    BiMatrix q(a.algebra(), a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) q(i, j) = quasidet_rc(a, i, j);
    return q;
}

bool rc_singular(const BiMatrix& a) {
    require_square(a);
    InverseEngine eng(a, a.max_norm());
    return !eng.inverse(full_mask(a.rows()), full_mask(a.cols()));
}

Element quasidet_2x2_formula(const BiMatrix& a, size_t i, size_t j) {
    if (a.rows() != 2 || a.cols() != 2) throw Error(Errc::shape_mismatch, "2x2 matrix required");
    if (i > 1 || j > 1) throw Error(Errc::bad_argument, "index out of range");
    const size_t oi = 1 - i, oj = 1 - j;
    // a(i,j) - a(i,oj) a(oi,oj)^-1 a(oi,j)
    return sub(a(i, j), mul(mul(a(i, oj), inv(a(oi, oj))), a(oi, j)));
}

BiMatrix inverse_2x2_formula(const BiMatrix& a) {
    BiMatrix r(a.algebra(), 2, 2);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) r(i, j) = inv(quasidet_2x2_formula(a, j, i));
    return r;
}

std::vector<Element> solve_rc(const BiMatrix& a, const std::vector<Element>& b) {
    require_square(a);
    if (b.size() != a.rows()) throw Error(Errc::shape_mismatch, "right-hand side height");
    BiMatrix bc = BiMatrix::column(b);
    BiMatrix x = rc_mul(rc_inv(a), bc);
    double bn = bc.max_norm();
    if (max_dist(rc_mul(a, x), bc) > 1e-8 * (1.0 + bn))
        throw Error(Errc::rc_singular, "rc-singular: residual check failed");
    std::vector<Element> out;
    for (size_t i = 0; i < x.rows(); ++i) out.push_back(x(i, 0));
    return out;
}

namespace {

// next k-combination of 0..n-1 in lex order
bool next_combination(std::vector<size_t>& c, size_t n) {
    const size_t k = c.size();
    size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

std::vector<size_t> first_combination(size_t k) {
    std::vector<size_t> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = i;
    return c;
}

}  // namespace

RankResult rc_rank(const BiMatrix& a) {
    RankResult res;
    const size_t m = a.rows(), n = a.cols();
    const AlgebraDesc& alg = a.algebra();
    InverseEngine eng(a, a.max_norm());
    std::optional<BiMatrix> major_inv;
    for (size_t k = std::min(m, n); k >= 1 && !major_inv; --k) {
        auto rows = first_combination(k);
        do {
            auto cols = first_combination(k);
            do {
                const auto& r = eng.inverse(mask_of(rows), mask_of(cols));
                if (r) {
                    major_inv = *r;
                    res.rank = k;
                    res.major = {rows, cols};
                    break;
                }
            } while (next_combination(cols, n));
        } while (!major_inv && next_combination(rows, m));
    }
    const auto& S = res.major.rows;
    const auto& T = res.major.cols;
    auto contains = [](const std::vector<size_t>& v, size_t x) {
        return std::find(v.begin(), v.end(), x) != v.end();
    };
    BiMatrix minv = major_inv ? *major_inv : BiMatrix(alg, 0, 0);
    for (size_t p = 0; p < m; ++p) {
        if (contains(S, p)) continue;
        for (size_t r = 0; r < n; ++r) {
            if (contains(T, r)) continue;
            Element v = eng.border(minv, p, r, S, T);
            res.max_border_quasidet = std::max(res.max_border_quasidet, norm(v));
        }
        // lambda_S = a(p, T) rc inv(a(S, T))
        std::vector<Element> lambda(m, Element(alg));
        for (size_t s = 0; s < S.size(); ++s) {
            Element acc(alg);
            for (size_t t = 0; t < T.size(); ++t) acc += mul(a(p, T[t]), minv(t, s));
            lambda[S[s]] = acc;
        }
        lambda[p] = Element::scalar(alg, -1.0);
        res.dependencies.push_back(std::move(lambda));
    }
    return res;
}

Report verify_eigen_rc(const BiMatrix& a, const Element& b, const std::vector<Element>& v) {
    require_square(a);
    if (v.size() != a.rows()) throw Error(Errc::shape_mismatch, "eigenvector length");
    BiMatrix av = rc_mul(a, BiMatrix::column(v));
    Report rep;
    double vn = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        rep.residual = std::max(rep.residual, dist(av(i, 0), mul(b, v[i])));
        vn = std::max(vn, norm(v[i]));
    }
    BiMatrix shifted = sub(a, left_scale(b, BiMatrix::identity(a.algebra(), a.rows())));
    bool singular = rc_singular(shifted);
    rep.metrics["residual"] = rep.residual;
    rep.metrics["shift_singular"] = singular ? 1.0 : 0.0;
    rep.verdict = vn > 0 && rep.residual <= 1e-9 * (1.0 + a.max_norm() * vn) && singular;
    if (!singular) rep.flag("a - bE is not rc-singular");
    return rep;
}

std::array<Element, 2> eigen_offdiag(const Element& f) {
    if (norm(f) == 0.0) throw Error(Errc::bad_argument, "f must be nonzero");
    return {f, neg(f)};
}

Element elliptic_eigen_sample(std::uint64_t seed) {
    const AlgebraDesc& h = make_algebra(AlgebraTag::quaternion);
    Rng rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        double v[3] = {g(rng), g(rng), g(rng)};
        double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n < 1e-6) continue;
        return Element(h, {0.0, v[0] / n, v[1] / n, v[2] / n});
    }
}

nlohmann::json to_json(const BiMatrix& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < a.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
        rows.push_back(row);
    }
    return {{"algebra", a.algebra().tag_name()}, {"entries", rows}};
}

BiMatrix bimatrix_from_json(const nlohmann::json& j) {
    try {
        const AlgebraDesc& alg = make_algebra(j.at("algebra").get<std::string>());
        std::vector<std::vector<Element>> rows;
        for (const auto& r : j.at("entries")) {
            std::vector<Element> row;
            for (const auto& e : r) row.push_back(element_from_json(e, &alg));
            rows.push_back(std::move(row));
        }
        return BiMatrix(alg, rows);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
}

nlohmann::json to_json(const MinorSelector& s) { return {{"rows", s.rows}, {"cols", s.cols}}; }

}  // namespace divcalc
