#include "divcalc/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace divcalc {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::unknown_tag: return "unknown tag";
        case Errc::algebra_mismatch: return "algebra mismatch";
        case Errc::not_invertible: return "not invertible";
        case Errc::shape_mismatch: return "shape mismatch";
        case Errc::hadamard_undefined: return "Hadamard inverse undefined";
        case Errc::quasidet_undefined: return "quasideterminant undefined";
        case Errc::rc_singular: return "rc-singular";
        case Errc::series_budget: return "series budget exceeded";
        case Errc::arity_mismatch: return "arity mismatch";
        case Errc::bad_argument: return "bad argument";
        case Errc::parse_error: return "parse error";
    }
    return "error";
}

AlgebraDesc::AlgebraDesc(AlgebraTag tag, std::string tag_name, std::vector<std::string> names,
                         std::vector<double> table)
    : tag_(tag), tag_name_(std::move(tag_name)), dim_(static_cast<int>(names.size())),
      names_(std::move(names)), table_(std::move(table)) {
    if (dim_ < 1 || dim_ > kMaxDim)
        throw Error(Errc::bad_argument, "algebra dim must be in 1.." + std::to_string(kMaxDim));
    if (static_cast<int>(table_.size()) != dim_ * dim_ * dim_)
        throw Error(Errc::bad_argument, "structure table must have dim^3 entries");
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) {
                double c = constant(i, j, k);
                if (c != 0.0) sparse_.push_back({i, j, k, c});
            }
    // e_0 must be the unit
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            double want = i == k ? 1.0 : 0.0;
            if (constant(0, i, k) != want || constant(i, 0, k) != want)
                throw Error(Errc::bad_argument, "basis element 0 is not the unit");
        }
}

std::shared_ptr<const AlgebraDesc> AlgebraDesc::custom(std::string tag_name,
                                                       std::vector<std::string> basis_names,
                                                       std::vector<double> table) {
    return std::make_shared<const AlgebraDesc>(AlgebraTag::custom, std::move(tag_name),
                                               std::move(basis_names), std::move(table));
}

namespace {

std::vector<double> quaternion_table() {
    // e_a e_b = sign * e_c
    static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const double sgn[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<double> t(64, 0.0);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[(a * 4 + b) * 4 + idx[a][b]] = sgn[a][b];
    return t;
}

}  // namespace

const AlgebraDesc& make_algebra(AlgebraTag tag) {
    static const AlgebraDesc real(AlgebraTag::real, "real", {"1"}, {1.0});
    static const AlgebraDesc cplx(AlgebraTag::complex, "complex", {"1", "i"},
                                  {1, 0, 0, 1, 0, 1, -1, 0});
    static const AlgebraDesc quat(AlgebraTag::quaternion, "quaternion", {"1", "i", "j", "k"},
                                  quaternion_table());
    switch (tag) {
        case AlgebraTag::real: return real;
        case AlgebraTag::complex: return cplx;
        case AlgebraTag::quaternion: return quat;
        default: break;
    }
    throw Error(Errc::unknown_tag, "unknown tag");
}

AlgebraTag parse_tag(const std::string& tag) {
    if (tag == "real" || tag == "R") return AlgebraTag::real;
    if (tag == "complex" || tag == "C") return AlgebraTag::complex;
    if (tag == "quaternion" || tag == "H") return AlgebraTag::quaternion;
    throw Error(Errc::unknown_tag, "unknown tag: " + tag);
}

const AlgebraDesc& make_algebra(const std::string& tag) { return make_algebra(parse_tag(tag)); }

double associativity_defect(const AlgebraDesc& alg) {
    double worst = 0;
    for (int a = 0; a < alg.dim(); ++a)
        for (int b = 0; b < alg.dim(); ++b)
            for (int c = 0; c < alg.dim(); ++c) {
                Element ea = Element::basis(alg, a), eb = Element::basis(alg, b),
                        ec = Element::basis(alg, c);
                worst = std::max(worst, dist(mul(mul(ea, eb), ec), mul(ea, mul(eb, ec))));
            }
    return worst;
}

Element::Element(const AlgebraDesc& alg, std::initializer_list<double> coeffs) : alg_(&alg) {
    if (static_cast<int>(coeffs.size()) != alg.dim())
        throw Error(Errc::shape_mismatch, "coefficient count differs from algebra dim");
    int i = 0;
    for (double v : coeffs) c_[i++] = v;
}

Element::Element(const AlgebraDesc& alg, const std::vector<double>& coeffs) : alg_(&alg) {
    if (static_cast<int>(coeffs.size()) != alg.dim())
        throw Error(Errc::shape_mismatch, "coefficient count differs from algebra dim");
    for (int i = 0; i < alg.dim(); ++i) c_[i] = coeffs[i];
}

Element Element::one(const AlgebraDesc& alg) { return scalar(alg, 1.0); }

Element Element::scalar(const AlgebraDesc& alg, double s) {
    Element e(alg);
    e.c_[0] = s;
    return e;
}

Element Element::basis(const AlgebraDesc& alg, int idx) {
    if (idx < 0 || idx >= alg.dim()) throw Error(Errc::bad_argument, "basis index out of range");
    Element e(alg);
    e.c_[idx] = 1.0;
    return e;
}

void check_same(const Element& a, const Element& b) {
    if (a.algebra_ptr() != b.algebra_ptr() || a.algebra_ptr() == nullptr)
        throw Error(Errc::algebra_mismatch, "algebra mismatch");
}

Element& Element::operator+=(const Element& o) {
    check_same(*this, o);
    for (int i = 0; i < dim(); ++i) c_[i] += o.c_[i];
    return *this;
}

Element& Element::operator-=(const Element& o) {
    check_same(*this, o);
    for (int i = 0; i < dim(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Element& Element::operator*=(double s) {
    for (int i = 0; i < dim(); ++i) c_[i] *= s;
    return *this;
}

Element add(const Element& a, const Element& b) {
    Element r = a;
    r += b;
    return r;
}

Element sub(const Element& a, const Element& b) {
    Element r = a;
    r -= b;
    return r;
}

Element scale(const Element& a, double s) {
    Element r = a;
    r *= s;
    return r;
}

Element neg(const Element& a) { return scale(a, -1.0); }

Element mul(const Element& a, const Element& b) {
    check_same(a, b);
    Element r(a.algebra());
    for (const auto& e : a.algebra().sparse()) r[e.k] += e.c * a[e.i] * b[e.j];
    return r;
}

Element conj(const Element& a) {
    Element r = a;
    for (int i = 1; i < a.dim(); ++i) r[i] = -r[i];
    return r;
}

double norm(const Element& a) {
    double s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * a[i];
    return std::sqrt(s);
}

double dist(const Element& a, const Element& b) { return norm(sub(a, b)); }

bool approx_equal(const Element& a, const Element& b, double tol) { return dist(a, b) <= tol; }

namespace {

// Solve M y = rhs by Gaussian elimination with partial pivoting; false if singular.
bool solve_real(RealMatrix m, std::vector<double> rhs, std::vector<double>& out) {
    const int n = static_cast<int>(rhs.size());
    double scale = 0;
    for (const auto& row : m)
        for (double v : row) scale = std::max(scale, std::abs(v));
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) <= 1e-14 * scale) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            double f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= m[r][c] * out[c];
        out[r] = s / m[r][r];
    }
    return true;
}

}  // namespace

Element inv(const Element& a) {
    double n = norm(a);
    if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::not_invertible, "not invertible");
    if (a.algebra().tag() != AlgebraTag::custom) return scale(conj(a), 1.0 / (n * n));
    std::vector<double> e0(a.dim(), 0.0), y;
    e0[0] = 1.0;
    if (!solve_real(left_matrix(a), e0, y)) throw Error(Errc::not_invertible, "not invertible");
    return Element(a.algebra(), y);
}

Element commutator(const Element& a, const Element& b) { return sub(mul(a, b), mul(b, a)); }

bool in_centralizer(const Element& c, const Element& b, double tol) {
    return norm(commutator(c, b)) <= tol;
}

Element power(const Element& a, int n) {
    if (n < 0) throw Error(Errc::bad_argument, "negative power");
    Element r = Element::one(a.algebra());
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

RealMatrix left_matrix(const Element& a) {
    const int d = a.dim();
    RealMatrix m(d, std::vector<double>(d, 0.0));
    for (const auto& e : a.algebra().sparse()) m[e.k][e.j] += e.c * a[e.i];
    return m;
}

RealMatrix right_matrix(const Element& a) {
    const int d = a.dim();
    RealMatrix m(d, std::vector<double>(d, 0.0));
    for (const auto& e : a.algebra().sparse()) m[e.k][e.i] += e.c * a[e.j];
    return m;
}

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
    if (a.empty() || a[0].size() != b.size())
        throw Error(Errc::shape_mismatch, "shape mismatch");
    RealMatrix r(a.size(), std::vector<double>(b[0].size(), 0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Element random_element(const AlgebraDesc& alg, Rng& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Element e(alg);
    for (int i = 0; i < alg.dim(); ++i) e[i] = u(rng);
    return e;
}

Element random_element(const AlgebraDesc& alg, std::uint64_t seed, double scale) {
    Rng rng(seed);
    return random_element(alg, rng, scale);
}

Element random_nonzero(const AlgebraDesc& alg, Rng& rng, double scale, double min_norm) {
    for (;;) {
        Element e = random_element(alg, rng, scale);
        if (norm(e) >= min_norm) return e;
    }
}

std::string to_text(const Element& a) {
    const auto& names = a.algebra().basis_names();
    std::ostringstream os;
    char buf[64];
    for (int i = 0; i < a.dim(); ++i) {
        double v = a[i];
        if (i == 0) {
            std::snprintf(buf, sizeof buf, "%.12g", v);
            os << buf;
        } else {
            std::snprintf(buf, sizeof buf, "%.12g", std::abs(v));
            os << (std::signbit(v) ? " - " : " + ") << buf << names[i];
        }
    }
    return os.str();
}

nlohmann::json to_json(const Element& a) {
    return {{"algebra", a.algebra().tag_name()}, {"coeffs", a.coeffs()}};
}

Element element_from_json(const nlohmann::json& j, const AlgebraDesc* alg) {
    try {
        if (j.is_array()) {
            if (!alg) throw Error(Errc::parse_error, "bare coefficient array needs an algebra");
            return Element(*alg, j.get<std::vector<double>>());
        }
        if (j.is_number()) {
            if (!alg) throw Error(Errc::parse_error, "bare number needs an algebra");
            return Element::scalar(*alg, j.get<double>());
        }
        const AlgebraDesc& a = make_algebra(j.at("algebra").get<std::string>());
        if (alg && alg != &a) throw Error(Errc::algebra_mismatch, "algebra mismatch");
        return Element(a, j.at("coeffs").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
}

}  // namespace divcalc
