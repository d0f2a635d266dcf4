#include "sqcode/codeops.hpp"

#include <algorithm>

namespace sqcode {
namespace {

std::vector<size_t> sorted_unique(std::vector<size_t> v, size_t n, const char* what) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (!v.empty() && v.back() >= n) throw ParamError(std::string(what) + ": position out of range");
    return v;
}

std::vector<size_t> complement_of(const std::vector<size_t>& sorted, size_t n) {
    std::vector<size_t> out;
    out.reserve(n - sorted.size());
    size_t j = 0;
    for (size_t i = 0; i < n; ++i) {
        if (j < sorted.size() && sorted[j] == i) {
            ++j;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

void cw_into(const Field& f, std::span<const Fe> a, std::span<const Fe> b,
             std::vector<Fe>& out) {
    for (size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], b[i]);
}

}  // namespace

LinearCode LinearCode::from_generator(const MatrixGF& gen) {
    auto [r, rk, pivots] = rref(gen);
    (void)pivots;
    if (rk == 0) throw EmptyCodeError("zero code is not representable as a LinearCode");
    if (rk == gen.rows()) return LinearCode(std::move(r));
    std::vector<size_t> keep(rk);
    for (size_t i = 0; i < rk; ++i) keep[i] = i;
    return LinearCode(r.row_select(keep));
}

LinearCode LinearCode::from_rows(const FieldPtr& f, const std::vector<VectorGF>& rows) {
    return from_generator(MatrixGF::from_rows(f, rows));
}

VectorGF LinearCode::random_codeword(Rng& rng) const {
    return gen_.apply_left(random_vector(field(), dim(), rng));
}

VectorGF cw_product(const VectorGF& a, const VectorGF& b) {
    require_same_field(a.field(), b.field());
    if (a.size() != b.size()) throw ParamError("cw_product length mismatch");
    VectorGF out(a.field(), a.size());
    const Field& f = *a.field();
    for (size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], b[i]);
    return out;
}

Fe inner_product(const VectorGF& a, const VectorGF& b) {
    require_same_field(a.field(), b.field());
    if (a.size() != b.size()) throw ParamError("inner_product length mismatch");
    const Field& f = *a.field();
    Fe acc{0};
    for (size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
    return acc;
}

LinearCode star_product(const LinearCode& a, const LinearCode& b) {
    require_same_field(a.field(), b.field());
    if (a.length() != b.length()) throw ParamError("star_product length mismatch");
    const size_t n = a.length();
    EchelonBasis basis(a.field(), n);
    std::vector<Fe> prod(n);
    const Field& f = *a.field();
    for (size_t i = 0; i < a.dim() && !basis.full(); ++i) {
        for (size_t j = 0; j < b.dim() && !basis.full(); ++j) {
            cw_into(f, a.generator().row_span(i), b.generator().row_span(j), prod);
            basis.insert(prod);
        }
    }
    return LinearCode::from_generator(basis.rref_basis());
}

LinearCode square(const LinearCode& a) {
    const size_t n = a.length();
    EchelonBasis basis(a.field(), n);
    std::vector<Fe> prod(n);
    const Field& f = *a.field();
    for (size_t i = 0; i < a.dim() && !basis.full(); ++i) {
        for (size_t j = i; j < a.dim() && !basis.full(); ++j) {
            cw_into(f, a.generator().row_span(i), a.generator().row_span(j), prod);
            basis.insert(prod);
        }
    }
    return LinearCode::from_generator(basis.rref_basis());
}

size_t square_dim(const LinearCode& a, size_t cap) {
    const size_t n = a.length();
    EchelonBasis basis(a.field(), n);
    std::vector<Fe> prod(n);
    const Field& f = *a.field();
    for (size_t i = 0; i < a.dim(); ++i) {
        for (size_t j = i; j < a.dim(); ++j) {
            if (basis.full() || basis.rank() > cap) return basis.rank();
            cw_into(f, a.generator().row_span(i), a.generator().row_span(j), prod);
            basis.insert(prod);
        }
    }
    return basis.rank();
}

size_t square_dim(const LinearCode& a) { return square_dim(a, a.length()); }

size_t product_span_dim(const std::vector<VectorGF>& zs, const MatrixGF& gens,
                        size_t cap) {
    const size_t n = gens.cols();
    EchelonBasis basis(gens.field(), n);
    std::vector<Fe> prod(n);
    const Field& f = *gens.field();
    for (const VectorGF& z : zs) {
        if (z.size() != n) throw ParamError("product_span_dim length mismatch");
        for (size_t j = 0; j < gens.rows(); ++j) {
            if (basis.full() || basis.rank() > cap) return basis.rank();
            cw_into(f, z.span(), gens.row_span(j), prod);
            basis.insert(prod);
        }
    }
    return basis.rank();
}

LinearCode dual(const LinearCode& c) {
    if (c.dim() >= c.length())
        throw ParamError("dual of the full space is the zero code");
    return LinearCode::from_generator(nullspace(c.generator()));
}

LinearCode shorten(const LinearCode& c, const std::vector<size_t>& positions) {
    const auto I = sorted_unique(positions, c.length(), "shorten");
    if (I.empty()) return c;
    const auto rest = complement_of(I, c.length());
    if (rest.empty()) throw EmptyCodeError("shorten: no positions left");
    // Reorder as [I | rest]; rows whose pivot lands in the rest block are
    // exactly the codewords vanishing on I.
    std::vector<size_t> order = I;
    order.insert(order.end(), rest.begin(), rest.end());
    const auto [r, rk, pivots] = rref(c.generator().col_select(order));
    std::vector<size_t> keep_rows;
    for (size_t i = 0; i < rk; ++i)
        if (pivots[i] >= I.size()) keep_rows.push_back(i);
    if (keep_rows.empty()) throw EmptyCodeError("shorten: result is the zero code");
    std::vector<size_t> rest_cols(rest.size());
    for (size_t i = 0; i < rest.size(); ++i) rest_cols[i] = I.size() + i;
    return LinearCode::from_generator(r.row_select(keep_rows).col_select(rest_cols));
}

LinearCode puncture(const LinearCode& c, const std::vector<size_t>& positions) {
    const auto I = sorted_unique(positions, c.length(), "puncture");
    if (I.empty()) return c;
    const auto rest = complement_of(I, c.length());
    if (rest.empty()) throw EmptyCodeError("puncture: no positions left");
    return LinearCode::from_generator(c.generator().col_select(rest));
}

LinearCode restrict_to(const LinearCode& c, const std::vector<size_t>& positions) {
    const auto I = sorted_unique(positions, c.length(), "restrict");
    if (I.empty()) throw EmptyCodeError("restrict: empty support");
    return LinearCode::from_generator(c.generator().col_select(I));
}

LinearCode subcode_vanishing_at(const LinearCode& c, size_t position) {
    if (position >= c.length()) throw ParamError("subcode_vanishing_at: position out of range");
    const MatrixGF& g = c.generator();
    const Field& f = *c.field();
    std::vector<size_t> nz;
    for (size_t r = 0; r < g.rows(); ++r)
        if (g.at(r, position).code != 0) nz.push_back(r);
    if (nz.empty()) return c;  // column identically zero: no constraint
    if (nz.size() == g.rows() && g.rows() == 1)
        throw EmptyCodeError("subcode_vanishing_at: result is the zero code");
    const size_t piv = nz[0];
    std::vector<VectorGF> rows;
    rows.reserve(g.rows() - 1);
    const VectorGF pivot_row = g.row(piv);
    const Fe pv = g.at(piv, position);
    for (size_t r = 0; r < g.rows(); ++r) {
        if (r == piv) continue;
        VectorGF row = g.row(r);
        const Fe factor = g.at(r, position);
        if (factor.code != 0) row = row.sub(pivot_row.scale(f.div(factor, pv)));
        rows.push_back(std::move(row));
    }
    return LinearCode::from_rows(c.field(), rows);
}

LinearCode code_sum(const LinearCode& a, const LinearCode& b) {
    require_same_field(a.field(), b.field());
    if (a.length() != b.length()) throw ParamError("code_sum length mismatch");
    return LinearCode::from_generator(a.generator().vstack(b.generator()));
}

std::optional<LinearCode> intersect(const LinearCode& a, const LinearCode& b) {
    require_same_field(a.field(), b.field());
    if (a.length() != b.length()) throw ParamError("intersect length mismatch");
    // Stack the parity checks of both codes; the kernel is the intersection.
    const MatrixGF ha = nullspace(a.generator());
    const MatrixGF hb = nullspace(b.generator());
    const MatrixGF ker = nullspace(ha.vstack(hb));
    if (ker.rows() == 0) return std::nullopt;
    return LinearCode::from_generator(ker);
}

bool contains(const LinearCode& c, const VectorGF& v) {
    require_same_field(c.field(), v.field());
    if (v.size() != c.length()) throw ParamError("contains length mismatch");
    // reduce against the RREF generator
    const MatrixGF& g = c.generator();
    const Field& f = *c.field();
    std::vector<Fe> w(v.data());
    const auto pivots = [&] {
        std::vector<size_t> p(g.rows());
        for (size_t r = 0; r < g.rows(); ++r) {
            size_t col = 0;
            while (g.at(r, col).code == 0) ++col;
            p[r] = col;
        }
        return p;
    }();
    for (size_t r = 0; r < g.rows(); ++r) {
        const Fe factor = w[pivots[r]];
        if (factor.code == 0) continue;
        for (size_t i = pivots[r]; i < w.size(); ++i)
            w[i] = f.sub(w[i], f.mul(factor, g.at(r, i)));
    }
    return std::all_of(w.begin(), w.end(), [](Fe x) { return x.code == 0; });
}

bool code_equal(const LinearCode& a, const LinearCode& b) {
    if (!a.field()->same_as(*b.field())) return false;
    return a == b;
}

SquareDimReport square_dim_report(const LinearCode& c) {
    SquareDimReport rep;
    rep.k = c.dim();
    rep.n = c.length();
    rep.dim_sq = square_dim(c);
    if (rep.k < rep.n) rep.dim_dual_sq = square_dim(dual(c));
    if (2 * rep.k - 1 <= rep.n) {
        rep.grs_like = rep.dim_sq == 2 * rep.k - 1;
    } else {
        rep.grs_like = rep.dim_dual_sq &&
                       *rep.dim_dual_sq == 2 * rep.n - 2 * rep.k - 1;
    }
    return rep;
}

}  // namespace sqcode
